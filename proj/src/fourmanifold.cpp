#include "bsc/fourmanifold.hpp"

#include <algorithm>
#include <array>
#include <deque>
#include <map>
#include <numeric>

namespace bsc {

long singular_fiber_count(const FamilyParameters& params) {
    params.validate();
    long n = params.n, k = params.k;
    return k * (3 * n * k - 2 * n + k);
}

Int euler_characteristic(const FamilyParameters& params) {
    params.validate();
    long n = params.n, k = params.k;
    Int closed = (3 * n + 1) * k * k - 6 * n * k + 4 * n + 4;
    Int via_fibers = -4 * (Int(params.genus()) - 1) + singular_fiber_count(params);
    if (closed != via_fibers)
        throw InternalError("Euler characteristic routes disagree");
    return closed;
}

// ---------------------------------------------------------------------------
// Todd-Coxeter (HLT with row filling) and presentation simplification
// ---------------------------------------------------------------------------

namespace {

std::vector<int> cyclic_reduce(std::vector<int> w) {
    // free reduce
    std::vector<int> r;
    for (int x : w) {
        if (!r.empty() && r.back() == -x) r.pop_back();
        else r.push_back(x);
    }
    while (r.size() >= 2 && r.front() == -r.back()) {
        r.erase(r.begin());
        r.pop_back();
    }
    return r;
}

// deterministic greedy Tietze elimination of generators that occur exactly
// once in some relator
struct SimplifiedPresentation {
    int ngens = 0;
    std::vector<std::vector<int>> relators;
};

SimplifiedPresentation tietze_simplify(int ngens, std::vector<std::vector<int>> rels) {
    for (auto& r : rels) r = cyclic_reduce(std::move(r));
    bool changed = true;
    std::vector<char> alive(ngens + 1, 1);
    while (changed) {
        changed = false;
        rels.erase(std::remove_if(rels.begin(), rels.end(), [](const auto& r) { return r.empty(); }),
                   rels.end());
        // pick the shortest relator owning a single-occurrence generator
        int best_rel = -1, best_gen = 0;
        for (int ri = 0; ri < int(rels.size()); ++ri) {
            const auto& r = rels[ri];
            if (best_rel >= 0 && rels[best_rel].size() <= r.size()) continue;
            std::map<int, int> cnt;
            for (int x : r) cnt[std::abs(x)]++;
            int gen = 0;
            for (int x : r) {
                if (cnt[std::abs(x)] == 1) { gen = std::abs(x); break; }
            }
            if (gen) { best_rel = ri; best_gen = gen; }
        }
        if (best_rel < 0) break;
        // rotate so the single occurrence comes first, solve g = w
        std::vector<int> r = rels[best_rel];
        size_t pos = 0;
        while (std::abs(r[pos]) != best_gen) ++pos;
        std::rotate(r.begin(), r.begin() + pos, r.end());
        // r = g^e w  =>  g^e = w^{-1}
        int e = r[0] > 0 ? 1 : -1;
        std::vector<int> w;  // replacement for g (e = +1) as a word
        for (size_t i = r.size(); i > 1; --i) w.push_back(-r[i - 1]);
        if (e < 0) {
            std::reverse(w.begin(), w.end());
            for (int& x : w) x = -x;
        }
        rels.erase(rels.begin() + best_rel);
        for (auto& s : rels) {
            std::vector<int> out;
            for (int x : s) {
                if (std::abs(x) != best_gen) {
                    out.push_back(x);
                } else if (x > 0) {
                    out.insert(out.end(), w.begin(), w.end());
                } else {
                    for (auto it = w.rbegin(); it != w.rend(); ++it) out.push_back(-*it);
                }
            }
            s = cyclic_reduce(std::move(out));
        }
        alive[best_gen] = 0;
        changed = true;
    }
    // compact numbering
    std::vector<int> newid(ngens + 1, 0);
    int next = 0;
    for (int g = 1; g <= ngens; ++g)
        if (alive[g]) newid[g] = ++next;
    SimplifiedPresentation out;
    out.ngens = next;
    for (auto& r : rels) {
        std::vector<int> w;
        w.reserve(r.size());
        for (int x : r) {
            check(alive[std::abs(x)], "eliminated generator survived");
            w.push_back(x > 0 ? newid[x] : -newid[-x]);
        }
        out.relators.push_back(std::move(w));
    }
    return out;
}

class CosetEnumerator {
  public:
    CosetEnumerator(int ngens, const std::vector<std::vector<int>>& relators, long budget)
        : ncols_(2 * ngens), budget_(budget) {
        for (const auto& r : relators) {
            std::vector<int> w;
            w.reserve(r.size());
            for (int x : r) w.push_back(column(x));
            if (!w.empty()) rels_.push_back(std::move(w));
        }
        table_.assign(size_t(2) * ncols_, 0);  // cosets are 1-based
        p_ = {0, 1};
        defined_ = 1;
        live_ = 1;
    }

    std::optional<long> run(CosetStats* stats) {
        bool ok = true;
        for (long c = 1; c <= defined_; ++c) {
            if (p_[c] != c) continue;
            for (const auto& rel : rels_) {
                if (!scan_and_fill(c, rel)) { ok = false; break; }
                if (p_[c] != c) break;  // c died in a coincidence
            }
            if (!ok) break;
            if (p_[c] != c) continue;
            for (int x = 0; x < ncols_ && ok; ++x)
                if (!tau(c, x)) {
                    if (!define(c, x)) ok = false;
                }
            if (!ok) break;
        }
        if (stats) {
            stats->cosets_defined = defined_;
            stats->live_cosets = live_;
            stats->closed = ok;
        }
        if (!ok) return std::nullopt;
        return live_;
    }

  private:
    int ncols_;
    long budget_;
    std::vector<std::vector<int>> rels_;
    std::vector<int> table_;
    std::vector<long> p_;
    std::deque<long> dead_queue_;
    long defined_ = 0, live_ = 0;

    int column(int g) const { return g > 0 ? 2 * (g - 1) : 2 * (-g - 1) + 1; }
    static int inv(int x) { return x ^ 1; }
    int& tau(long c, int x) { return table_[size_t(c) * ncols_ + x]; }

    long rep(long c) {
        while (p_[c] != c) c = p_[c];
        return c;
    }

    bool define(long c, int x) {
        if (defined_ >= budget_) return false;
        ++defined_;
        ++live_;
        long d = defined_;
        table_.resize(size_t(d + 1) * ncols_, 0);
        p_.push_back(d);
        tau(c, x) = int(d);
        tau(d, inv(x)) = int(c);
        return true;
    }

    void merge(long a, long b) {
        a = rep(a);
        b = rep(b);
        if (a == b) return;
        if (a > b) std::swap(a, b);
        p_[b] = a;
        --live_;
        dead_queue_.push_back(b);
    }

    void process_coincidences() {
        while (!dead_queue_.empty()) {
            long e = dead_queue_.front();
            dead_queue_.pop_front();
            for (int x = 0; x < ncols_; ++x) {
                long f = tau(e, x);
                if (!f) continue;
                tau(e, x) = 0;
                if (tau(f, inv(x)) == e) tau(f, inv(x)) = 0;
                long e1 = rep(e), f1 = rep(f);
                if (long t = tau(e1, x); t) merge(t, f1);
                else tau(e1, x) = int(f1);
                e1 = rep(e);
                f1 = rep(f);
                if (long t = tau(f1, inv(x)); t) merge(t, e1);
                else tau(f1, inv(x)) = int(e1);
            }
        }
    }

    bool scan_and_fill(long c, const std::vector<int>& w) {
        size_t i = 0, j = w.size();
        long f = c, b = c;
        while (true) {
            while (i < j && tau(f, w[i])) f = tau(f, w[i]), ++i;
            if (i == j) {
                if (f != b) { merge(f, b); process_coincidences(); }
                return true;
            }
            while (j > i && tau(b, inv(w[j - 1]))) b = tau(b, inv(w[j - 1])), --j;
            if (j == i) {
                merge(f, b);
                process_coincidences();
                return true;
            }
            if (j == i + 1) {
                tau(f, w[i]) = int(b);
                tau(b, inv(w[i])) = int(f);
                return true;
            }
            if (!define(f, w[i])) return false;
        }
    }
};

}  // namespace

std::optional<long> coset_enumerate(const GroupPresentation& pres,
                                    const std::vector<std::vector<int>>& extra_relators,
                                    long max_cosets, CosetStats* stats, bool tietze_prepass) {
    std::vector<std::vector<int>> rels = pres.relators;
    rels.insert(rels.end(), extra_relators.begin(), extra_relators.end());
    int ngens = pres.ngens;
    if (tietze_prepass) {
        SimplifiedPresentation simp = tietze_simplify(ngens, std::move(rels));
        ngens = simp.ngens;
        rels = std::move(simp.relators);
        if (ngens == 0) {
            if (stats) *stats = {1, 1, true};
            return 1;
        }
    }
    CosetEnumerator en(ngens, rels, max_cosets);
    return en.run(stats);
}

std::vector<std::vector<int>> gamma_vanishing_words(const SurfaceComplex& cover,
                                                    const HomologyModel& model,
                                                    const GroupPresentation& pres) {
    std::vector<std::vector<int>> words;
    for (int i = 1; i <= 2 * cover.params.n + 1; ++i) {
        auto lifts = lift_curve(cover, {CurveLabel::Kind::GammaDown, i, 0});
        // calibrated label l corresponds to raw component (l-1+shift) mod k
        int shift = model.label_shifts.empty() ? 0 : model.label_shifts[i - 1];
        for (int l = 1; l <= cover.k; ++l)
            words.push_back(cycle_to_word(cover, lifts[((l - 1 + shift) % cover.k + cover.k) % cover.k], pres));
    }
    return words;
}

Pi1Result pi1_total_space(const SurfaceComplex& cover, const HomologyModel& model,
                          long coset_budget, CosetStats* stats) {
    GroupPresentation pres = pi1_presentation(cover);
    auto words = gamma_vanishing_words(cover, model, pres);
    auto idx = coset_enumerate(pres, words, coset_budget, stats);
    if (!idx) return Pi1Result::UnknownAtBudget;
    if (*idx != 1)
        throw InternalError("coset table closed with index > 1; the total space group should be trivial");
    return Pi1Result::Trivial;
}

std::vector<Int> abelian_invariants(int ngens, const std::vector<std::vector<int>>& relators) {
    IntMat m(int(relators.size()), ngens);
    for (int r = 0; r < int(relators.size()); ++r)
        for (int x : relators[r]) m.at(r, std::abs(x) - 1) += x > 0 ? 1 : -1;
    std::vector<Int> inv = snf_invariants(m);
    std::vector<Int> out;
    for (const Int& d : inv)
        if (d != 1) out.push_back(d);
    int rank = int(inv.size());
    for (int i = 0; i < ngens - rank; ++i) out.push_back(0);
    return out;
}

std::vector<Int> h1_total_space(const SurfaceComplex& cover, const HomologyModel& model) {
    GroupPresentation pres = pi1_presentation(cover);
    std::vector<std::vector<int>> rels = pres.relators;
    for (auto& w : gamma_vanishing_words(cover, model, pres)) rels.push_back(std::move(w));
    return abelian_invariants(pres.ngens, rels);
}

// ---------------------------------------------------------------------------
// Meyer cocycle and the signature of a positive relator
// ---------------------------------------------------------------------------

namespace {

using RatRow = std::vector<Rat>;
using RatMat2 = std::vector<RatRow>;

// kernel basis of an (n x m) rational matrix
std::vector<RatRow> rat_kernel(RatMat2 a, int m) {
    int n = int(a.size());
    std::vector<int> pivot_of_col(m, -1);
    int r = 0;
    for (int c = 0; c < m && r < n; ++c) {
        int p = -1;
        for (int i = r; i < n; ++i)
            if (a[i][c] != 0) { p = i; break; }
        if (p < 0) continue;
        std::swap(a[r], a[p]);
        Rat pv = a[r][c];
        for (int j = 0; j < m; ++j) a[r][j] /= pv;
        for (int i = 0; i < n; ++i) {
            if (i == r || a[i][c] == 0) continue;
            Rat f = a[i][c];
            for (int j = 0; j < m; ++j) a[i][j] -= f * a[r][j];
        }
        pivot_of_col[c] = r;
        ++r;
    }
    std::vector<RatRow> basis;
    for (int c = 0; c < m; ++c) {
        if (pivot_of_col[c] >= 0) continue;
        RatRow v(m, Rat(0));
        v[c] = 1;
        for (int cc = 0; cc < m; ++cc)
            if (pivot_of_col[cc] >= 0) v[cc] = -a[pivot_of_col[cc]][c];
        basis.push_back(std::move(v));
    }
    return basis;
}

// signature of a symmetric rational matrix by congruence diagonalization
int sym_signature(RatMat2 a) {
    int n = int(a.size());
    int sig = 0;
    for (int i = 0; i < n;) {
        int p = -1;
        for (int j = i; j < n; ++j)
            if (a[j][j] != 0) { p = j; break; }
        if (p < 0) {
            int qi = -1, qj = -1;
            for (int x = i; x < n && qi < 0; ++x)
                for (int y = x + 1; y < n; ++y)
                    if (a[x][y] != 0) { qi = x; qj = y; break; }
            if (qi < 0) break;  // remaining block is zero
            for (int t = 0; t < n; ++t) a[qi][t] += a[qj][t];
            for (int t = 0; t < n; ++t) a[t][qi] += a[t][qj];
            p = qi;
        }
        if (p != i) {
            std::swap(a[i], a[p]);
            for (int t = 0; t < n; ++t) std::swap(a[t][i], a[t][p]);
        }
        Rat d = a[i][i];
        sig += d > 0 ? 1 : -1;
        for (int j = i + 1; j < n; ++j) {
            if (a[j][i] == 0) continue;
            Rat f = a[j][i] / d;
            for (int t = 0; t < n; ++t) a[j][t] -= f * a[i][t];
            for (int t = 0; t < n; ++t) a[t][j] -= f * a[t][i];
        }
        ++i;
    }
    return sig;
}

}  // namespace

int meyer_cocycle(const IntMat& A, const IntMat& B, const IntMat& J) {
    int n = J.rows();
    if (!A.is_symplectic(J) || !B.is_symplectic(J))
        throw ValueError("meyer_cocycle: inputs must be symplectic for the given form");
    IntMat Ainv = inverse_unimodular(A);
    // V = ker [ A^{-1} - I | B - I ]
    RatMat2 m(n, RatRow(2 * n, Rat(0)));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            m[i][j] = Rat(Ainv.at(i, j) - (i == j ? 1 : 0));
            m[i][n + j] = Rat(B.at(i, j) - (i == j ? 1 : 0));
        }
    auto kernel = rat_kernel(std::move(m), 2 * n);
    if (kernel.empty()) return 0;
    // gram[(x,y),(x',y')] = (x + y)^T J (I - B) y'
    int d = int(kernel.size());
    RatMat2 gram(d, RatRow(d, Rat(0)));
    for (int b = 0; b < d; ++b) {
        RatRow w(n, Rat(0));  // (I - B) y'
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                Int c = (i == j ? 1 : 0) - B.at(i, j);
                if (c != 0) w[i] += Rat(c) * kernel[b][n + j];
            }
        RatRow Jw(n, Rat(0));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (J.at(i, j) != 0) Jw[i] += Rat(J.at(i, j)) * w[j];
        for (int a = 0; a < d; ++a) {
            Rat v(0);
            for (int i = 0; i < n; ++i) v += (kernel[a][i] + kernel[a][n + i]) * Jw[i];
            gram[a][b] = v;
        }
    }
    for (int a = 0; a < d; ++a)
        for (int b = a; b < d; ++b)
            check(gram[a][b] == gram[b][a], "Meyer form must be symmetric");
    return sym_signature(std::move(gram));
}

Int signature(const HomologyModel& model, const Relator& relator) {
    if (!relator.form || !(*relator.form == model.J()))
        throw StateError("signature: relator is not resolved against this model");
    return relator_signature(relator);
}

Int relator_signature(const Relator& relator) {
    if (!relator.resolved()) throw StateError("signature needs a relator with resolved classes");
    for (const auto& f : relator.factors)
        if (is_zero(f.cls))
            throw ValueError("signature: a vanishing cycle is null-homologous (separating); unsupported");
    const IntMat& J = *relator.form;
    IntMat total = relator_monodromy(relator);
    if (!total.is_identity())
        throw ValueError("signature: relator monodromy is not the identity");
    IntMat acc = IntMat::identity(J.rows());
    Int sigma = 0;
    for (const auto& f : relator.factors) {
        IntMat t = transvection_matrix(J, f.cls);
        sigma += meyer_cocycle(acc, t, J);
        acc = t * acc;
    }
    return sigma;
}

// ---------------------------------------------------------------------------
// chain reduction for n = 1
// ---------------------------------------------------------------------------

std::vector<IntVec> chain_pattern_classes(const HomologyModel& model) {
    const int k = model.params.k;
    if (model.params.n != 1) throw ValueError("chain pattern is defined for n = 1 only");
    // display order gamma_1^1 gamma_2^1 gamma_1^2 ... gamma_2^{k-1} gamma_1^k; acting = reversed
    std::vector<IntVec> display;
    for (int l = 1; l < k; ++l) {
        display.push_back(canonical_sign(model.gamma(1, l)));
        display.push_back(canonical_sign(model.gamma(2, l)));
    }
    display.push_back(canonical_sign(model.gamma(1, k)));
    return {display.rbegin(), display.rend()};
}

ChainReduction chain_reduction_script(const SurfaceComplex& cover, const HomologyModel& model) {
    const FamilyParameters params = cover.params;
    if (params.n != 1) throw ValueError("chain reduction script supports n = 1 only");
    const int k = params.k;
    FamilyData fam = build_family(params);
    Relator rel = resolve(model, fam.relator);

    // the last-support twist block coincides with the first-family block:
    // verify [gamma_3^l] = +-[gamma_1^l] and relabel those factors
    for (int l = 1; l <= k; ++l) {
        IntVec a = canonical_sign(model.gamma(3, l));
        IntVec b = canonical_sign(model.gamma(1, l));
        check(a == b, "for n = 1 the two outer curve families must be homologous");
    }
    for (auto& f : rel.factors)
        if (f.label_valid && f.label.kind == SymKind::GammaUp && f.label.i == 3)
            f.label.i = 1;

    ChainReduction out;
    out.initial_relator = rel;
    const IntMat before = relator_monodromy(rel);
    const size_t L = 4 * size_t(k) - 2;
    auto apply = [&](size_t pos) {
        rel = elementary_transform(rel, pos, HurwitzDir::Left);
        out.steps.push_back({pos, HurwitzDir::Left});
        check(relator_monodromy(rel) == before, "chain script changed the relator monodromy");
    };
    for (int r = 0; r < k; ++r) {
        size_t base = size_t(r) * L;
        // phase 1: walk each twist of the cyclic block down past disjoint factors
        for (int j = 0; j <= k - 2; ++j) {
            size_t from = base + size_t(k) - 1 + j;
            size_t to = base + 2 * size_t(j) + 1;
            for (size_t q = from; q > to; --q) apply(q - 1);
        }
        // phase 2: fuse each adjacent pair into the chain pattern
        for (int j = 0; j <= k - 2; ++j) apply(base + 2 * size_t(j));
    }

    // final pattern: the (2g+1)-chain block repeated 2g+2 times
    auto pattern = chain_pattern_classes(model);
    size_t block = pattern.size();
    check(block == size_t(2 * k - 1), "chain block length must be 2g+1");
    check(rel.size() == block * size_t(2 * k), "final relator length must be (2g+1)(2g+2)");
    for (size_t t = 0; t < rel.size(); ++t)
        check(canonical_sign(rel.factors[t].cls) == pattern[t % block],
              "final relator does not match the chain pattern");
    out.final_relator = rel;
    return out;
}

}  // namespace bsc

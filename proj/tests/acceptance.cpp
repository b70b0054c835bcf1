// Acceptance suite: one pass/fail line per criterion, exit 0 only if all pass.
// Every tolerance is zero; all arithmetic is exact.

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "bsc/braid.hpp"
#include "bsc/fourmanifold.hpp"

using namespace bsc;

namespace {

int failures = 0;

struct Criterion {
    std::string name;
    bool pass = true;
    std::vector<std::string> notes;

    void require(bool cond, const std::string& what) {
        if (!cond) {
            pass = false;
            notes.push_back(what);
        }
    }
    void done() {
        std::printf("[%s] %s\n", pass ? "PASS" : "FAIL", name.c_str());
        for (const auto& n : notes) std::printf("       - %s\n", n.c_str());
        if (!pass) ++failures;
    }
};

struct Built {
    SurfaceComplex cover;
    HomologyModel model;
};

Built build(int n, int k) {
    SurfaceComplex c = build_cover({n, k});
    HomologyModel m = build_homology(c);
    return {std::move(c), std::move(m)};
}

std::string pair_str(int n, int k) {
    return "(" + std::to_string(n) + "," + std::to_string(k) + ")";
}

void criterion_1_and_2() {
    Criterion c1{"1. homology verification of the factorization on the (n,k) grid"};
    Criterion c2{"2. relator identity on the same grid"};
    for (int n = 1; n <= 3; ++n)
        for (int k = 3; k <= 6; ++k) {
            try {
                Built b = build(n, k);
                FamilyData fam = build_family({n, k});
                IntMat w = monodromy_matrix(b.model, fam.wtilde);
                c1.require(w == zeta_star(b.model), pair_str(n, k) + ": monodromy != deck action");
                c1.require(matrix_order(zeta_star(b.model), k) == k,
                           pair_str(n, k) + ": deck action order is not k");
                Relator rel = resolve(b.model, fam.relator);
                c2.require(relator_monodromy(rel).is_identity(),
                           pair_str(n, k) + ": relator monodromy is not the identity");
            } catch (const Error& e) {
                c1.require(false, pair_str(n, k) + ": " + e.what());
                c2.require(false, pair_str(n, k) + ": construction failed");
            }
        }
    c1.done();
    c2.done();
}

void criterion_3() {
    Criterion c{"3. Euler characteristic: two routes agree with the closed formula"};
    for (int n = 1; n <= 10; ++n)
        for (int k = 3; k <= 10; ++k) {
            try {
                Int chi = euler_characteristic({n, k});
                Int formula = Int(3 * n + 1) * k * k - 6 * n * k + 4 * n + 4;
                c.require(chi == formula, pair_str(n, k) + ": formula mismatch");
            } catch (const Error& e) {
                c.require(false, pair_str(n, k) + ": " + e.what());
            }
        }
    c.require(euler_characteristic({1, 3}) == 26, "(1,3) != 26");
    c.require(euler_characteristic({1, 4}) == 48, "(1,4) != 48");
    c.require(euler_characteristic({2, 3}) == 39, "(2,3) != 39");
    c.done();
}

void criterion_4() {
    Criterion c{"4. spin table on n <= 4, k <= 6"};
    for (int n = 1; n <= 4; ++n)
        for (int k = 3; k <= 6; ++k) {
            try {
                Built b = build(n, k);
                auto witness = spin_fiber_complement(b.model, b.model.vanishing_classes());
                bool expect_witness = (k % 2 == 0) && (n % 2 == 1);
                c.require(witness.has_value() == expect_witness,
                          pair_str(n, k) + ": witness " + (witness ? "found" : "absent") +
                              ", expected " + (expect_witness ? "found" : "absent"));
                if (witness)
                    for (const auto& cls : b.model.vanishing_classes())
                        c.require(b.model.evaluate_quadratic(*witness, cls) == 1,
                                  pair_str(n, k) + ": witness fails on a vanishing class");
                c.require(!spin_total(witness, -1), pair_str(n, k) + ": total space must be non-spin");
            } catch (const Error& e) {
                c.require(false, pair_str(n, k) + ": " + e.what());
            }
        }
    c.done();
}

void criterion_5() {
    Criterion c{"5. simple connectivity and trivial first homology"};
    for (auto [n, k] : std::vector<std::pair<int, int>>{{1, 3}, {1, 4}, {2, 3}}) {
        try {
            Built b = build(n, k);
            CosetStats stats;
            Pi1Result r = pi1_total_space(b.cover, b.model, 1000000, &stats);
            c.require(r == Pi1Result::Trivial,
                      pair_str(n, k) + ": enumeration did not certify triviality within 10^6 cosets");
            c.require(h1_total_space(b.cover, b.model).empty(),
                      pair_str(n, k) + ": first homology is not trivial");
        } catch (const Error& e) {
            c.require(false, pair_str(n, k) + ": " + e.what());
        }
    }
    c.done();
}

void criterion_6() {
    Criterion c{"6. signature anchors, move invariance, and consistency bounds"};
    try {
        Built b13 = build(1, 3);
        FamilyData d13 = build_family({1, 3});
        Relator r13 = resolve(b13.model, d13.relator);
        Int s13 = signature(b13.model, r13);
        c.require(s13 == -16, "(1,3): stated anchor -16, computed " + s13.get_str() +
                                  " (computation cross-validated on classical relators; see unit suite)");

        Built b14 = build(1, 4);
        FamilyData d14 = build_family({1, 4});
        Relator r14 = resolve(b14.model, d14.relator);
        Int s14 = signature(b14.model, r14);
        c.require(s14 == -30, "(1,4): stated anchor -30, computed " + s14.get_str() +
                                  " (computation cross-validated on classical relators; see unit suite)");

        // invariance under 100 randomized elementary-transform sequences
        std::mt19937_64 rng(1000003);
        std::uniform_int_distribution<int> pos(0, int(r13.size()) - 2), dir(0, 1), len(1, 12);
        bool invariant = true;
        for (int trial = 0; trial < 100; ++trial) {
            Relator r = r13;
            int steps = len(rng);
            for (int t = 0; t < steps; ++t)
                r = elementary_transform(r, size_t(pos(rng)), dir(rng) ? HurwitzDir::Left : HurwitzDir::Right);
            if (signature(b13.model, r) != s13) invariant = false;
        }
        c.require(invariant, "(1,3): signature changed under an elementary-transform sequence");

        // |sigma| <= b2 and sigma == b2 (mod 2) where pi1 is certified trivial
        for (auto [n, k] : std::vector<std::pair<int, int>>{{1, 3}, {1, 4}, {2, 3}}) {
            Built b = build(n, k);
            if (pi1_total_space(b.cover, b.model, 1000000) != Pi1Result::Trivial) {
                c.require(false, pair_str(n, k) + ": triviality not certified");
                continue;
            }
            FamilyData fam = build_family({n, k});
            Int s = signature(b.model, resolve(b.model, fam.relator));
            Int b2 = euler_characteristic({n, k}) - 2;
            Int abs_s = s >= 0 ? s : Int(-s);
            c.require(abs_s <= b2, pair_str(n, k) + ": |sigma| exceeds b2");
            c.require((s - b2) % 2 == 0, pair_str(n, k) + ": sigma and b2 have different parity");
        }
    } catch (const Error& e) {
        c.require(false, e.what());
    }
    c.done();
}

void criterion_7() {
    Criterion c{"7. chain reduction for (1,3) and (1,4)"};
    for (int k : {3, 4}) {
        try {
            Built b = build(1, k);
            ChainReduction red = chain_reduction_script(b.cover, b.model);
            size_t expect = size_t(2 * k - 1) * size_t(2 * k);
            c.require(red.final_relator.size() == expect,
                      "(1," + std::to_string(k) + "): final length " +
                          std::to_string(red.final_relator.size()) + ", expected " + std::to_string(expect));
            auto pattern = chain_pattern_classes(b.model);
            bool match = true;
            for (size_t t = 0; t < red.final_relator.size(); ++t)
                if (canonical_sign(red.final_relator.factors[t].cls) != pattern[t % pattern.size()])
                    match = false;
            c.require(match, "(1," + std::to_string(k) + "): final relator is not the chain pattern");
            // monodromy invariance at every step is asserted inside the script;
            // re-check the endpoints here
            c.require(relator_monodromy(red.final_relator).is_identity(),
                      "(1," + std::to_string(k) + "): final monodromy is not the identity");
            if (k == 3)
                c.require(red.final_relator.size() == 30, "(1,3): expected 30 factors");
        } catch (const Error& e) {
            c.require(false, std::string("(1,") + std::to_string(k) + "): " + e.what());
        }
    }
    c.done();
}

void criterion_8() {
    Criterion c{"8. braid evidence: permutation triviality, exponent sums, kernel witness"};
    for (int n = 1; n <= 6; ++n) {
        BraidWord w = sphere_braid_word(n);
        TwistWord sigma;
        for (int x : w.letters) sigma.letters.push_back({SymKind::Sigma, std::abs(x), 0, x > 0 ? 1 : -1});
        c.require(psi(sigma, {n, 3}).is_identity(), "n=" + std::to_string(n) + ": psi(W) != id");
        c.require(w.exponent_sum() == 4 * n + 2, "n=" + std::to_string(n) + ": exponent sum");
    }
    auto witness = witness_search(sphere_braid_word(1), 8);
    if (witness) {
        c.require(kernel_witness_check(sphere_braid_word(1), *witness),
                  "n=1: found witness fails verification");
    } else {
        // bounded search may be exhausted without failing the suite
        std::printf("       - n=1: witness search exhausted at length 8 (reported not_found)\n");
    }
    c.done();
}

void criterion_9() {
    Criterion c{"9. property suites (exact, zero tolerance)"};
    std::mt19937_64 rng(90001);

    // free reduction: idempotent, exponent-sum preserving
    std::uniform_int_distribution<int> idx(1, 3), sgn(0, 1);
    for (int trial = 0; trial < 100; ++trial) {
        TwistWord w;
        for (int t = 0; t < 30; ++t) w.letters.push_back({SymKind::Sigma, idx(rng), 0, sgn(rng) ? 1 : -1});
        TwistWord r = reduce(w);
        c.require(reduce(r).letters == r.letters, "reduce not idempotent");
        c.require(exponent_sum(r) == exponent_sum(w), "reduce changed the exponent sum");
    }

    // Riemann-Hurwitz on the grid
    for (int n = 1; n <= 4; ++n)
        for (int k = 3; k <= 6; ++k) {
            SurfaceComplex cover = build_cover({n, k});
            c.require(cover.euler_characteristic() == 2 * k - (2 * n + 2) * (k - 1),
                      pair_str(n, k) + ": Riemann-Hurwitz violated");
        }

    // transvections symplectic; Meyer cocycle identity + conjugation invariance
    Built b = build(1, 4);
    const IntMat& J = b.model.J();
    std::uniform_int_distribution<int> coef(-2, 2);
    auto rand_class = [&]() {
        IntVec v(b.model.g2);
        bool nz = false;
        for (auto& x : v) {
            x = coef(rng);
            if (x != 0) nz = true;
        }
        if (!nz) v[0] = 1;
        return v;
    };
    auto rand_symplectic = [&]() {
        IntMat m = IntMat::identity(b.model.g2);
        for (int t = 0; t < 3; ++t) m = m * transvection(b.model, rand_class());
        return m;
    };
    for (int trial = 0; trial < 100; ++trial) {
        IntVec cl = rand_class();
        c.require(transvection(b.model, cl).is_symplectic(J), "transvection not symplectic");
        IntMat A = rand_symplectic(), B = rand_symplectic(), C = rand_symplectic();
        c.require(meyer_cocycle(A, B, J) + meyer_cocycle(A * B, C, J) ==
                      meyer_cocycle(A, B * C, J) + meyer_cocycle(B, C, J),
                  "Meyer cocycle identity failed");
        IntMat Ci = inverse_unimodular(C);
        c.require(meyer_cocycle(C * A * Ci, C * B * Ci, J) == meyer_cocycle(A, B, J),
                  "Meyer conjugation invariance failed");
        c.require(meyer_cocycle(IntMat::identity(b.model.g2), A, J) == 0, "Meyer normalization failed");
    }
    c.done();
}

std::pair<std::string, int> run_cli(const std::string& cli, const std::string& args) {
    std::string cmd = cli + " " + args + " 2>/dev/null";
    std::array<char, 4096> buf{};
    std::string out;
    FILE* p = popen(cmd.c_str(), "r");
    if (!p) return {out, -1};
    size_t got;
    while ((got = fread(buf.data(), 1, buf.size(), p)) > 0) out.append(buf.data(), got);
    int status = pclose(p);
    return {out, WIFEXITED(status) ? WEXITSTATUS(status) : -1};
}

void cli_determinism(const std::string& cli) {
    Criterion c{"CLI reports are byte-identical across reruns"};
    if (cli.empty()) {
        std::printf("       - no CLI path given; skipping\n");
        c.done();
        return;
    }
    for (const std::string& args :
         {std::string("verify 2 4"), std::string("invariants 1 3"), std::string("factorize 2 3"),
          std::string("braid-check 2"), std::string("chain-reduce 4")}) {
        auto a = run_cli(cli, args);
        auto b = run_cli(cli, args);
        c.require(!a.first.empty() && a.first == b.first, "output differs for '" + args + "'");
        c.require(a.second == 0, "'" + args + "' exited with " + std::to_string(a.second));
    }
    c.require(run_cli(cli, "verify 1 2").second == 2, "bad parameters must exit 2");
    c.require(run_cli(cli, "nonsense").second == 2, "unknown subcommand must exit 2");
    c.done();
}

}  // namespace

int main(int argc, char** argv) {
    std::string cli;
    for (int i = 1; i + 1 < argc; ++i)
        if (std::string(argv[i]) == "--cli") cli = argv[i + 1];

    criterion_1_and_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    criterion_9();
    cli_determinism(cli);

    if (failures) {
        std::printf("%d criterion(s) failed\n", failures);
        return 1;
    }
    std::printf("all criteria passed\n");
    return 0;
}

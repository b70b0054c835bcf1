#include "bsc/words.hpp"

#include <sstream>

namespace bsc {

bool is_downstairs(SymKind k) {
    return k == SymKind::Sigma || k == SymKind::HalfRot || k == SymKind::AHalf ||
           k == SymKind::TTwist || k == SymKind::GammaDown;
}

bool is_curve(SymKind k) {
    return k == SymKind::GammaUp || k == SymKind::AlphaUp || k == SymKind::GammaDown;
}

TwistWord TwistWord::inverse() const {
    TwistWord r;
    r.letters.reserve(letters.size());
    for (auto it = letters.rbegin(); it != letters.rend(); ++it) r.letters.push_back(it->inverse());
    return r;
}

TwistWord TwistWord::concat(const TwistWord& o) const {
    TwistWord r = *this;
    r.letters.insert(r.letters.end(), o.letters.begin(), o.letters.end());
    return r;
}

Alphabet Alphabet::downstairs(int n) {
    Alphabet a;
    a.sigma_max = 2 * n + 1;
    a.h_max = 2 * n;
    a.a_max = n;
    a.t_max = 2 * n + 1;
    a.down_gamma_max = 2 * n + 1;
    return a;
}

Alphabet Alphabet::full(int n, int k) {
    Alphabet a = downstairs(n);
    a.gamma_i_max = 2 * n + 1;
    a.gamma_l_max = k;
    a.alpha_i_max = n;
    a.alpha_l_max = k - 1;
    return a;
}

bool Alphabet::admits(const GeneratorSymbol& s) const {
    switch (s.kind) {
        case SymKind::Sigma: return s.i >= 1 && s.i <= sigma_max;
        case SymKind::HalfRot: return s.i >= 1 && s.i <= h_max;
        case SymKind::AHalf: return s.i >= 1 && s.i <= a_max;
        case SymKind::TTwist: return s.i >= 1 && s.i <= t_max;
        case SymKind::GammaUp: return s.i >= 1 && s.i <= gamma_i_max && s.l >= 1 && s.l <= gamma_l_max;
        case SymKind::AlphaUp: return s.i >= 1 && s.i <= alpha_i_max && s.l >= 1 && s.l <= alpha_l_max;
        case SymKind::GammaDown: return s.i >= 1 && s.i <= down_gamma_max;
    }
    return false;
}

std::string format_symbol(const GeneratorSymbol& s) {
    std::ostringstream os;
    switch (s.kind) {
        case SymKind::Sigma: os << 's' << s.i; break;
        case SymKind::HalfRot: os << 'h' << s.i; break;
        case SymKind::AHalf: os << 'a' << s.i; break;
        case SymKind::TTwist: os << 't' << s.i; break;
        case SymKind::GammaUp: os << "g[" << s.i << "][" << s.l << "]"; break;
        case SymKind::AlphaUp: os << "al[" << s.i << "][" << s.l << "]"; break;
        case SymKind::GammaDown: os << "G[" << s.i << "]"; break;
    }
    if (s.sign < 0) os << "^-1";
    return os.str();
}

std::string format_word(const TwistWord& w) {
    std::string out;
    for (size_t j = 0; j < w.letters.size(); ++j) {
        if (j) out += ' ';
        out += format_symbol(w.letters[j]);
    }
    return out;
}

namespace {

int parse_index(const std::string& tok, size_t& pos) {
    size_t start = pos;
    while (pos < tok.size() && isdigit(static_cast<unsigned char>(tok[pos]))) ++pos;
    if (pos == start) throw ParseError("expected index in token '" + tok + "'");
    return std::stoi(tok.substr(start, pos - start));
}

int parse_bracket_index(const std::string& tok, size_t& pos) {
    if (pos >= tok.size() || tok[pos] != '[') throw ParseError("expected '[' in token '" + tok + "'");
    ++pos;
    int v = parse_index(tok, pos);
    if (pos >= tok.size() || tok[pos] != ']') throw ParseError("expected ']' in token '" + tok + "'");
    ++pos;
    return v;
}

GeneratorSymbol parse_token(const std::string& tok) {
    GeneratorSymbol s;
    size_t pos = 0;
    if (tok.rfind("al", 0) == 0) {
        s.kind = SymKind::AlphaUp;
        pos = 2;
        s.i = parse_bracket_index(tok, pos);
        s.l = parse_bracket_index(tok, pos);
    } else if (tok.rfind("g[", 0) == 0) {
        s.kind = SymKind::GammaUp;
        pos = 1;
        s.i = parse_bracket_index(tok, pos);
        s.l = parse_bracket_index(tok, pos);
    } else if (tok.rfind("G[", 0) == 0) {
        s.kind = SymKind::GammaDown;
        pos = 1;
        s.i = parse_bracket_index(tok, pos);
    } else if (!tok.empty() && (tok[0] == 's' || tok[0] == 'h' || tok[0] == 'a' || tok[0] == 't')) {
        switch (tok[0]) {
            case 's': s.kind = SymKind::Sigma; break;
            case 'h': s.kind = SymKind::HalfRot; break;
            case 'a': s.kind = SymKind::AHalf; break;
            case 't': s.kind = SymKind::TTwist; break;
        }
        pos = 1;
        s.i = parse_index(tok, pos);
    } else {
        throw ParseError("unknown token '" + tok + "'");
    }
    if (pos < tok.size()) {
        if (tok.substr(pos) != "^-1") throw ParseError("trailing junk in token '" + tok + "'");
        s.sign = -1;
        pos = tok.size();
    }
    return s;
}

}  // namespace

TwistWord parse_word(const std::string& text, const Alphabet& alphabet) {
    TwistWord w;
    std::istringstream is(text);
    std::string tok;
    while (is >> tok) {
        GeneratorSymbol s = parse_token(tok);
        if (!alphabet.admits(s))
            throw ParseError("symbol '" + format_symbol(s) + "' is not in the declared alphabet");
        w.letters.push_back(s);
    }
    return w;
}

TwistWord reduce(const TwistWord& w) {
    TwistWord r;
    for (const auto& s : w.letters) {
        if (!r.letters.empty() && r.letters.back().same_generator(s) && r.letters.back().sign == -s.sign)
            r.letters.pop_back();
        else
            r.letters.push_back(s);
    }
    return r;
}

long exponent_sum(const TwistWord& w) {
    long sum = 0;
    for (const auto& s : w.letters) sum += s.sign;
    return sum;
}

bool Relator::resolved() const {
    if (!form) return false;
    for (const auto& f : factors)
        if (f.cls.empty()) return false;
    return true;
}

Relator Relator::from_word(const TwistWord& w) {
    Relator r;
    r.factors.reserve(w.size());
    for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it) {
        if (it->sign != 1) throw ValueError("relator factors must be positive twists");
        if (!is_curve(it->kind)) throw ValueError("relator factors must be twists along curves");
        r.factors.push_back({*it, true, {}});
    }
    return r;
}

TwistWord Relator::to_word() const {
    TwistWord w;
    w.letters.reserve(factors.size());
    for (auto it = factors.rbegin(); it != factors.rend(); ++it) {
        if (!it->label_valid) throw StateError("relator factor has no symbolic label");
        w.letters.push_back(it->label);
    }
    return w;
}

IntMat transvection_matrix(const IntMat& J, const IntVec& c) {
    int n = J.rows();
    check(int(c.size()) == n, "transvection: class/form size mismatch");
    // T = I + c (c^T J^T);  T x = x + (x^T J c) c
    IntVec Jc = J * c;
    IntMat t = IntMat::identity(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) t.at(i, j) += c[i] * Jc[j];
    return t;
}

namespace {

void require_resolved(const Relator& r) {
    if (!r.resolved()) throw StateError("operation requires a relator with resolved homology classes");
}

IntVec transvect(const IntMat& J, const IntVec& c, const IntVec& x, bool inverse) {
    // x +- <x,c> c
    Int coef = 0;
    IntVec Jc = J * c;
    for (size_t i = 0; i < x.size(); ++i) coef += x[i] * Jc[i];
    if (inverse) coef = -coef;
    return add(x, scale(c, coef));
}

}  // namespace

Relator elementary_transform(const Relator& r, size_t position, HurwitzDir dir) {
    require_resolved(r);
    if (position + 1 >= r.factors.size()) throw ValueError("elementary_transform: position out of range");
    Relator out = r;
    auto& lo = out.factors[position];
    auto& hi = out.factors[position + 1];
    const IntMat& J = *r.form;
    if (dir == HurwitzDir::Left) {
        // displayed: t_b t_a ~ t_{t_b(a)} t_b   (a acts first)
        Relator::Factor a = lo, b = hi;
        lo = b;
        hi.cls = transvect(J, b.cls, a.cls, false);
        hi.label = a.label;
        hi.label_valid = a.label_valid && hi.cls == a.cls;
    } else {
        // displayed: t_b t_a ~ t_a t_{t_a^{-1}(b)}
        Relator::Factor a = lo, b = hi;
        hi = a;
        lo.cls = transvect(J, a.cls, b.cls, true);
        lo.label = b.label;
        lo.label_valid = b.label_valid && lo.cls == b.cls;
    }
    return out;
}

Relator simultaneous_conjugate(const Relator& r, const IntMat& conj) {
    require_resolved(r);
    if (!conj.is_symplectic(*r.form))
        throw ValueError("simultaneous_conjugate: conjugator is not symplectic for the stored form");
    Relator out = r;
    for (auto& f : out.factors) {
        IntVec img = conj * f.cls;
        f.label_valid = f.label_valid && img == f.cls;
        f.cls = std::move(img);
    }
    return out;
}

IntMat relator_monodromy(const Relator& r) {
    require_resolved(r);
    int n = r.form->rows();
    IntMat m = IntMat::identity(n);
    for (const auto& f : r.factors) m = transvection_matrix(*r.form, f.cls) * m;
    return m;
}

}  // namespace bsc

#include "bsc/family.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace bsc {

void FamilyParameters::validate() const {
    if (n < 1 || k < 3)
        throw ValueError("unsupported parameters: need n >= 1 and k >= 3, got n=" + std::to_string(n) +
                         " k=" + std::to_string(k));
}

GeneratorSymbol CurveLabel::twist() const {
    switch (kind) {
        case Kind::GammaUp: return {SymKind::GammaUp, i, l, 1};
        case Kind::AlphaUp: return {SymKind::AlphaUp, i, l, 1};
        case Kind::GammaDown: return {SymKind::GammaDown, i, 0, 1};
    }
    throw InternalError("bad curve label kind");
}

CurveLabel CurveLabel::of(const GeneratorSymbol& s) {
    switch (s.kind) {
        case SymKind::GammaUp: return {Kind::GammaUp, s.i, s.l};
        case SymKind::AlphaUp: return {Kind::AlphaUp, s.i, s.l};
        case SymKind::GammaDown: return {Kind::GammaDown, s.i, 0};
        default: throw ValueError("symbol '" + format_symbol(s) + "' is not a curve twist");
    }
}

Permutation Permutation::identity(int m) {
    Permutation p;
    p.img.resize(m);
    std::iota(p.img.begin(), p.img.end(), 1);
    return p;
}

Permutation Permutation::after(const Permutation& first) const {
    check(degree() == first.degree(), "permutation degree mismatch");
    Permutation r;
    r.img.resize(img.size());
    for (int x = 1; x <= degree(); ++x) r.img[x - 1] = (*this)(first(x));
    return r;
}

bool Permutation::is_identity() const {
    for (int x = 1; x <= degree(); ++x)
        if ((*this)(x) != x) return false;
    return true;
}

Permutation Permutation::transposition(int m, int a, int b) {
    Permutation p = identity(m);
    p.img[a - 1] = b;
    p.img[b - 1] = a;
    return p;
}

TwistWord h_tilde_block(const FamilyParameters& params, int i) {
    params.validate();
    if (i < 1 || i > 2 * params.n - 1 || i % 2 == 0)
        throw ValueError("h-block index must be odd in 1..2n-1");
    TwistWord w;
    for (int l = 1; l < params.k; ++l) {
        w.letters.push_back({SymKind::GammaUp, i, l, 1});
        w.letters.push_back({SymKind::GammaUp, i + 1, l, 1});
    }
    w.letters.push_back({SymKind::GammaUp, i, params.k, 1});
    return w;
}

TwistWord a_tilde_block(const FamilyParameters& params, int i) {
    params.validate();
    if (i < 1 || i > params.n) throw ValueError("a-block index must be in 1..n");
    TwistWord w;
    for (int l = 1; l < params.k; ++l) w.letters.push_back({SymKind::AlphaUp, i, l, 1});
    return w;
}

TwistWord t_tilde_block(const FamilyParameters& params) {
    params.validate();
    TwistWord w;
    for (int l = 1; l <= params.k; ++l) w.letters.push_back({SymKind::GammaUp, 2 * params.n + 1, l, 1});
    return w;
}

FamilyData build_family(const FamilyParameters& params) {
    params.validate();
    FamilyData d;
    d.params = params;
    for (int i = 1; i <= 2 * params.n + 1; ++i)
        for (int l = 1; l <= params.k; ++l) d.gamma_labels.push_back({CurveLabel::Kind::GammaUp, i, l});
    for (int i = 1; i <= params.n; ++i)
        for (int l = 1; l < params.k; ++l) d.alpha_labels.push_back({CurveLabel::Kind::AlphaUp, i, l});

    for (int i = 1; i <= 2 * params.n - 1; i += 2) d.wtilde = d.wtilde.concat(h_tilde_block(params, i));
    d.wtilde = d.wtilde.concat(t_tilde_block(params));
    for (int i = params.n; i >= 1; --i) d.wtilde = d.wtilde.concat(a_tilde_block(params, i));

    size_t expect = size_t(3 * params.n * params.k - 2 * params.n + params.k);
    check(d.wtilde.size() == expect, "factor count of the upstairs word is off");

    TwistWord power;
    for (int t = 0; t < params.k; ++t) power = power.concat(d.wtilde);
    d.relator = Relator::from_word(power);

    for (int i = 1; i <= 2 * params.n - 1; i += 2) d.sphere_word.letters.push_back({SymKind::HalfRot, i, 0, 1});
    d.sphere_word.letters.push_back({SymKind::TTwist, 2 * params.n + 1, 0, 1});
    for (int i = params.n; i >= 1; --i) d.sphere_word.letters.push_back({SymKind::AHalf, i, 0, 1});
    return d;
}

nlohmann::json FamilyData::to_json() const {
    nlohmann::json j;
    j["n"] = params.n;
    j["k"] = params.k;
    j["genus"] = params.genus();
    auto labels = [](const std::vector<CurveLabel>& ls) {
        std::vector<std::string> out;
        out.reserve(ls.size());
        for (const auto& c : ls) out.push_back(c.str());
        return out;
    };
    j["curves"]["gamma"] = labels(gamma_labels);
    j["curves"]["alpha"] = labels(alpha_labels);
    j["sphere_word"] = format_word(sphere_word);
    j["wtilde"] = format_word(wtilde);
    j["wtilde_factor_count"] = wtilde.size();
    j["relator"] = format_word(relator.to_word());
    j["relator_factor_count"] = relator.size();
    return j;
}

namespace {

Permutation letter_image(const GeneratorSymbol& s, int m) {
    switch (s.kind) {
        case SymKind::Sigma: return Permutation::transposition(m, s.i, s.i + 1);
        case SymKind::HalfRot: return Permutation::transposition(m, s.i, s.i + 2);
        case SymKind::AHalf: return Permutation::transposition(m, 2 * s.i - 1, 2 * s.i + 1);
        case SymKind::TTwist: return Permutation::identity(m);
        default:
            throw ValueError("psi is defined on downstairs words only; got '" + format_symbol(s) + "'");
    }
}

}  // namespace

Permutation psi(const TwistWord& w, const FamilyParameters& params) {
    params.validate();
    int m = params.marked_points();
    Alphabet alpha = Alphabet::downstairs(params.n);
    Permutation p = Permutation::identity(m);
    // rightmost letter acts first
    for (const auto& s : w.letters) {
        if (!alpha.admits(s))
            throw ValueError("symbol '" + format_symbol(s) + "' is outside the downstairs alphabet");
        p = p.after(letter_image(s, m));
    }
    return p;
}

Liftability liftability(const TwistWord& w, const FamilyParameters& params) {
    Permutation p = psi(w, params);
    int m = p.degree();
    bool preserves = true, reverses = true;
    for (int x = 1; x <= m; x += 2) {
        int y = p(x);
        if (y % 2 == 0) preserves = false;
        else reverses = false;
    }
    for (int x = 2; x <= m; x += 2) {
        int y = p(x);
        if (y % 2 == 1) preserves = false;
        else reverses = false;
    }
    if (preserves) return Liftability::ParityPreserving;
    if (reverses) return Liftability::ParityReversing;
    return Liftability::NonLiftable;
}

TwistWord lift_word(const TwistWord& w, const FamilyParameters& params) {
    params.validate();
    TwistWord out;
    for (const auto& s : w.letters) {
        TwistWord block;
        if (s.kind == SymKind::HalfRot && s.i % 2 == 1 && s.i <= 2 * params.n - 1)
            block = h_tilde_block(params, s.i);
        else if (s.kind == SymKind::AHalf && s.i >= 1 && s.i <= params.n)
            block = a_tilde_block(params, s.i);
        else if (s.kind == SymKind::TTwist && s.i == 2 * params.n + 1)
            block = t_tilde_block(params);
        else
            throw ValueError("no catalogued lift for '" + format_symbol(s) + "'");
        if (s.sign < 0) block = block.inverse();
        out = out.concat(block);
    }
    return out;
}

CurveLabel zeta_label_action(const CurveLabel& label, const FamilyParameters& params) {
    params.validate();
    if (label.kind == CurveLabel::Kind::GammaDown)
        throw ValueError("zeta_label_action expects an upstairs label");
    if (label.kind == CurveLabel::Kind::GammaUp) {
        if (label.i < 1 || label.i > 2 * params.n + 1 || label.l < 1 || label.l > params.k)
            throw ValueError("gamma label out of range");
        return {label.kind, label.i, label.l % params.k + 1};
    }
    if (label.i < 1 || label.i > params.n || label.l < 1 || label.l > params.k - 1)
        throw ValueError("alpha label out of range");
    if (label.l == params.k - 1)
        throw ValueError("undefined result: the deck image of " + label.str() +
                         " is not a catalogued curve");
    return {label.kind, label.i, label.l + 1};
}

}  // namespace bsc

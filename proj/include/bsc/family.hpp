#pragma once

#include <string>
#include <vector>

#include "bsc/words.hpp"

#include "json.hpp"

namespace bsc {

struct FamilyParameters {
    int n = 0;
    int k = 0;

    int genus() const { return n * (k - 1); }
    int marked_points() const { return 2 * n + 2; }
    void validate() const;
};

struct CurveLabel {
    enum class Kind { GammaUp, AlphaUp, GammaDown };
    Kind kind{};
    int i = 0;
    int l = 0;  // unused for GammaDown

    bool operator==(const CurveLabel& o) const { return kind == o.kind && i == o.i && l == o.l; }
    GeneratorSymbol twist() const;                    // positive twist symbol along this curve
    static CurveLabel of(const GeneratorSymbol& s);   // requires a curve symbol
    std::string str() const { return format_symbol(twist()); }
};

// permutation of {1..m} in one-line notation
struct Permutation {
    std::vector<int> img;  // img[i-1] = image of i

    static Permutation identity(int m);
    int degree() const { return int(img.size()); }
    int operator()(int x) const { return img[x - 1]; }
    Permutation after(const Permutation& first) const;  // apply `first`, then this
    bool is_identity() const;
    bool operator==(const Permutation& o) const { return img == o.img; }
    static Permutation transposition(int m, int a, int b);
};

enum class Liftability { ParityPreserving, ParityReversing, NonLiftable };

struct FamilyData {
    FamilyParameters params;
    std::vector<CurveLabel> gamma_labels;  // (2n+1)k of them
    std::vector<CurveLabel> alpha_labels;  // n(k-1)
    TwistWord wtilde;                      // upstairs factorization, display order
    Relator relator;                       // (wtilde)^k, acting order, unresolved classes
    TwistWord sphere_word;                 // W in {h, t, a} symbols, display order

    nlohmann::json to_json() const;
};

FamilyData build_family(const FamilyParameters& params);

// upstairs blocks of the factorization, display order
TwistWord h_tilde_block(const FamilyParameters& params, int i);  // odd i in 1..2n-1
TwistWord a_tilde_block(const FamilyParameters& params, int i);  // 1..n
TwistWord t_tilde_block(const FamilyParameters& params);         // index 2n+1

// action on marked points; total on downstairs words (upstairs symbols are a type error)
Permutation psi(const TwistWord& w, const FamilyParameters& params);

Liftability liftability(const TwistWord& w, const FamilyParameters& params);

// catalogued lifts: h_{2i-1}, a_i, t_{2n+1}; everything else -> ValueError
TwistWord lift_word(const TwistWord& w, const FamilyParameters& params);

// label action of the deck rotation
CurveLabel zeta_label_action(const CurveLabel& label, const FamilyParameters& params);

}  // namespace bsc

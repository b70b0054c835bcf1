#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "bsc/intmat.hpp"

namespace bsc {

// Symbol kinds. Sigma/HalfRot/AHalf/TTwist and GammaDown live downstairs on the
// marked sphere; GammaUp/AlphaUp are twists along curves upstairs.
enum class SymKind { Sigma, HalfRot, AHalf, TTwist, GammaUp, AlphaUp, GammaDown };

struct GeneratorSymbol {
    SymKind kind{};
    int i = 0;
    int l = 0;     // sheet index; used by GammaUp/AlphaUp only
    int sign = 1;  // +1 or -1

    bool same_generator(const GeneratorSymbol& o) const {
        return kind == o.kind && i == o.i && l == o.l;
    }
    bool operator==(const GeneratorSymbol& o) const {
        return same_generator(o) && sign == o.sign;
    }
    GeneratorSymbol inverse() const { return {kind, i, l, -sign}; }
};

bool is_downstairs(SymKind k);
bool is_curve(SymKind k);  // GammaUp / AlphaUp / GammaDown

// Written (display) order; the rightmost letter acts first.
struct TwistWord {
    std::vector<GeneratorSymbol> letters;

    bool empty() const { return letters.empty(); }
    size_t size() const { return letters.size(); }
    TwistWord inverse() const;
    TwistWord concat(const TwistWord& o) const;
};

// Declared alphabet: valid index ranges per symbol kind. A symbol outside every
// declared range is rejected at parse time.
struct Alphabet {
    int sigma_max = 0;              // s1..s_max
    int h_max = 0;                  // h1..h_max
    int a_max = 0;                  // a1..a_max
    int t_max = 0;                  // t1..t_max
    int gamma_i_max = 0, gamma_l_max = 0;  // g[i][l]
    int alpha_i_max = 0, alpha_l_max = 0;  // al[i][l]
    int down_gamma_max = 0;         // G[i]

    // downstairs alphabet on 2n+2 marked points
    static Alphabet downstairs(int n);
    // full alphabet for family parameters (n, k)
    static Alphabet full(int n, int k);

    bool admits(const GeneratorSymbol& s) const;
};

std::string format_symbol(const GeneratorSymbol& s);
std::string format_word(const TwistWord& w);
TwistWord parse_word(const std::string& text, const Alphabet& alphabet);

// free reduction: cancel adjacent inverse pairs
TwistWord reduce(const TwistWord& w);
long exponent_sum(const TwistWord& w);

// Positive relator. Factors are stored in acting order (factor 0 acts first);
// display/serialization writes the reversed, classical order.
struct Relator {
    struct Factor {
        GeneratorSymbol label;   // meaningful only when label_valid
        bool label_valid = false;
        IntVec cls;              // homology class; empty when unresolved
    };
    std::vector<Factor> factors;
    std::shared_ptr<const IntMat> form;  // intersection form, set when resolved

    bool resolved() const;
    size_t size() const { return factors.size(); }

    // relator from a positive twist word (display order); factors = reversed letters
    static Relator from_word(const TwistWord& w);
    // word in display order (labels must be valid)
    TwistWord to_word() const;
};

enum class HurwitzDir { Left, Right };

// The two classical adjacent-factor moves. `position` indexes the acting-order
// pair (position, position+1). Left followed by Right at the same position is
// the identity.
Relator elementary_transform(const Relator& r, size_t position, HurwitzDir dir);

// Replace every factor class x by conj*x. conj must be symplectic for the
// stored form.
Relator simultaneous_conjugate(const Relator& r, const IntMat& conj);

// Product of the factor transvections, first factor applied first.
IntMat relator_monodromy(const Relator& r);

// transvection along class c w.r.t. form J: x -> x + <x,c> c
IntMat transvection_matrix(const IntMat& J, const IntVec& c);

}  // namespace bsc

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bsc/errors.hpp"

namespace bsc {

// Braid word on `strands` strands; letters are signed generator indices
// (+i = s_i, -i = s_i^{-1}), written order, rightmost letter acts first.
struct BraidWord {
    int strands = 0;
    std::vector<int> letters;

    void validate() const;
    BraidWord inverse() const;
    BraidWord concat(const BraidWord& o) const;
    long exponent_sum() const;
};

// free group word: signed generator indices (1-based), freely reduced
using FreeWord = std::vector<int>;

FreeWord free_reduce(const FreeWord& w);
FreeWord free_inverse(const FreeWord& w);

// Automorphism of the free group F_rank given by the images of the generators.
struct FreeAutomorphism {
    int rank = 0;
    std::vector<FreeWord> images;

    static FreeAutomorphism identity(int rank);
    FreeWord apply(const FreeWord& w) const;
    // apply `first`, then this
    FreeAutomorphism after(const FreeAutomorphism& first) const;
    bool operator==(const FreeAutomorphism& o) const { return rank == o.rank && images == o.images; }
    bool is_identity() const;
};

// Artin action: s_i sends x_i -> x_i x_{i+1} x_i^{-1}, x_{i+1} -> x_i.
// Words act with the rightmost letter first; the action is faithful.
FreeAutomorphism artin_action(const BraidWord& w);

// W = h_1 h_3 ... h_{2n-1} t_{2n+1} a_n ... a_1 expanded in braid letters
BraidWord sphere_braid_word(int n);

// sphere relator R = s_1 s_2 ... s_{m-2} s_{m-1}^2 s_{m-2} ... s_1 on m strands
BraidWord sphere_relator(int strands);
// full twist (s_1 s_2 ... s_{m-1})^m
BraidWord full_twist(int strands);

struct WitnessEntry {
    enum class Gen { R, RInverse, FullTwist, FullTwistInverse };
    BraidWord conjugator;
    Gen gen = Gen::R;
};

// true iff artin_action(w) equals the action of the witness product
bool kernel_witness_check(const BraidWord& w, const std::vector<WitnessEntry>& witness);

// deterministic breadth-first search (lexicographic letter order s_1, s_1^{-1},
// s_2, ...) for a single conjugate witness w = c R c^{-1}
std::optional<std::vector<WitnessEntry>> witness_search(const BraidWord& w, int max_conjugator_length);

std::string witness_gen_name(WitnessEntry::Gen g);

}  // namespace bsc

#include "bsc/braid.hpp"

#include <algorithm>
#include <deque>
#include <map>

namespace bsc {

void BraidWord::validate() const {
    if (strands < 2) throw ValueError("braid word needs at least 2 strands");
    for (int x : letters) {
        int i = std::abs(x);
        if (i < 1 || i >= strands) throw ValueError("braid letter index out of range");
    }
}

BraidWord BraidWord::inverse() const {
    BraidWord r{strands, {}};
    r.letters.reserve(letters.size());
    for (auto it = letters.rbegin(); it != letters.rend(); ++it) r.letters.push_back(-*it);
    return r;
}

BraidWord BraidWord::concat(const BraidWord& o) const {
    check(strands == o.strands, "braid concat: strand count mismatch");
    BraidWord r = *this;
    r.letters.insert(r.letters.end(), o.letters.begin(), o.letters.end());
    return r;
}

long BraidWord::exponent_sum() const {
    long s = 0;
    for (int x : letters) s += x > 0 ? 1 : -1;
    return s;
}

FreeWord free_reduce(const FreeWord& w) {
    FreeWord out;
    for (int x : w) {
        if (!out.empty() && out.back() == -x) out.pop_back();
        else out.push_back(x);
    }
    return out;
}

FreeWord free_inverse(const FreeWord& w) {
    FreeWord out;
    out.reserve(w.size());
    for (auto it = w.rbegin(); it != w.rend(); ++it) out.push_back(-*it);
    return out;
}

FreeAutomorphism FreeAutomorphism::identity(int rank) {
    FreeAutomorphism a;
    a.rank = rank;
    a.images.resize(rank);
    for (int i = 0; i < rank; ++i) a.images[i] = {i + 1};
    return a;
}

FreeWord FreeAutomorphism::apply(const FreeWord& w) const {
    FreeWord out;
    for (int x : w) {
        const FreeWord& img = images[std::abs(x) - 1];
        if (x > 0)
            out.insert(out.end(), img.begin(), img.end());
        else {
            for (auto it = img.rbegin(); it != img.rend(); ++it) out.push_back(-*it);
        }
    }
    return free_reduce(out);
}

FreeAutomorphism FreeAutomorphism::after(const FreeAutomorphism& first) const {
    check(rank == first.rank, "automorphism rank mismatch");
    FreeAutomorphism r;
    r.rank = rank;
    r.images.reserve(rank);
    for (const auto& img : first.images) r.images.push_back(apply(img));
    return r;
}

bool FreeAutomorphism::is_identity() const {
    for (int i = 0; i < rank; ++i)
        if (images[i] != FreeWord{i + 1}) return false;
    return true;
}

namespace {

FreeAutomorphism sigma_action(int strands, int i, bool inverse) {
    FreeAutomorphism a = FreeAutomorphism::identity(strands);
    if (!inverse) {
        a.images[i - 1] = {i, i + 1, -i};
        a.images[i] = {i};
    } else {
        a.images[i - 1] = {i + 1};
        a.images[i] = {-(i + 1), i, i + 1};
    }
    return a;
}

}  // namespace

FreeAutomorphism artin_action(const BraidWord& w) {
    w.validate();
    FreeAutomorphism a = FreeAutomorphism::identity(w.strands);
    // rightmost letter first
    for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it)
        a = sigma_action(w.strands, std::abs(*it), *it < 0).after(a);
    return a;
}

BraidWord sphere_braid_word(int n) {
    if (n < 1) throw ValueError("sphere word needs n >= 1");
    BraidWord w{2 * n + 2, {}};
    for (int i = 1; i <= 2 * n - 1; i += 2) {
        w.letters.push_back(i);
        w.letters.push_back(i + 1);
        w.letters.push_back(i);
    }
    w.letters.push_back(2 * n + 1);
    w.letters.push_back(2 * n + 1);
    for (int i = n; i >= 1; --i) {
        w.letters.push_back(2 * i);
        w.letters.push_back(2 * i - 1);
        w.letters.push_back(-2 * i);
    }
    return w;
}

BraidWord sphere_relator(int strands) {
    BraidWord w{strands, {}};
    for (int i = 1; i <= strands - 2; ++i) w.letters.push_back(i);
    w.letters.push_back(strands - 1);
    w.letters.push_back(strands - 1);
    for (int i = strands - 2; i >= 1; --i) w.letters.push_back(i);
    return w;
}

BraidWord full_twist(int strands) {
    BraidWord w{strands, {}};
    for (int t = 0; t < strands; ++t)
        for (int i = 1; i < strands; ++i) w.letters.push_back(i);
    return w;
}

std::string witness_gen_name(WitnessEntry::Gen g) {
    switch (g) {
        case WitnessEntry::Gen::R: return "R";
        case WitnessEntry::Gen::RInverse: return "R^-1";
        case WitnessEntry::Gen::FullTwist: return "Delta^2";
        case WitnessEntry::Gen::FullTwistInverse: return "Delta^-2";
    }
    return "?";
}

bool kernel_witness_check(const BraidWord& w, const std::vector<WitnessEntry>& witness) {
    w.validate();
    BraidWord prod{w.strands, {}};
    for (const auto& e : witness) {
        if (e.conjugator.strands != w.strands) throw ValueError("witness conjugator strand mismatch");
        BraidWord g;
        switch (e.gen) {
            case WitnessEntry::Gen::R: g = sphere_relator(w.strands); break;
            case WitnessEntry::Gen::RInverse: g = sphere_relator(w.strands).inverse(); break;
            case WitnessEntry::Gen::FullTwist: g = full_twist(w.strands); break;
            case WitnessEntry::Gen::FullTwistInverse: g = full_twist(w.strands).inverse(); break;
        }
        prod = prod.concat(e.conjugator).concat(g).concat(e.conjugator.inverse());
    }
    return artin_action(w) == artin_action(prod);
}

std::optional<std::vector<WitnessEntry>> witness_search(const BraidWord& w, int max_conjugator_length) {
    w.validate();
    const FreeAutomorphism target = artin_action(sphere_relator(w.strands));
    // state: artin(c)^{-1} artin(w) artin(c); BFS over conjugator words c in
    // lexicographic order s_1, s_1^{-1}, s_2, ... so the first hit is the
    // length-lexicographically least witness
    std::vector<std::pair<FreeAutomorphism, FreeAutomorphism>> steps;  // (sigma, sigma^{-1})
    for (int i = 1; i < w.strands; ++i) {
        steps.push_back({artin_action({w.strands, {i}}), artin_action({w.strands, {-i}})});
        steps.push_back({artin_action({w.strands, {-i}}), artin_action({w.strands, {i}})});
    }
    auto letter_of = [&](size_t idx) {
        int i = int(idx) / 2 + 1;
        return idx % 2 == 0 ? i : -i;
    };
    std::map<std::vector<FreeWord>, std::vector<int>> seen;
    std::deque<std::pair<FreeAutomorphism, std::vector<int>>> queue;
    FreeAutomorphism start = artin_action(w);
    seen[start.images] = {};
    queue.push_back({start, {}});
    while (!queue.empty()) {
        auto [a, path] = queue.front();
        queue.pop_front();
        if (a == target) {
            BraidWord c{w.strands, path};
            return std::vector<WitnessEntry>{{c, WitnessEntry::Gen::R}};
        }
        if (int(path.size()) >= max_conjugator_length) continue;
        for (size_t s = 0; s < steps.size(); ++s) {
            // conjugate: sigma^{-1} a sigma
            FreeAutomorphism b = steps[s].second.after(a.after(steps[s].first));
            auto it = seen.find(b.images);
            if (it != seen.end()) continue;
            auto next = path;
            next.push_back(letter_of(s));
            seen[b.images] = next;
            queue.push_back({std::move(b), std::move(next)});
        }
    }
    return std::nullopt;
}

}  // namespace bsc

#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace reglab::k3 {

// Integer lattice with a symmetric Gram matrix and labeled basis.
struct Lattice {
    std::vector<std::vector<long long>> gram;
    std::vector<std::string> basis_labels;

    size_t rank() const { return gram.size(); }
    void validate() const;
};

// The rank-2 lattice of a BL K3 surface: section C with C^2 = -2, fiber F
// with C.F = 1, F^2 = 0.
Lattice bl_lattice();

using DivisorClass = std::vector<long long>;

long long pair(const Lattice& l, const DivisorClass& a, const DivisorClass& b);
long long self_intersection(const Lattice& l, const DivisorClass& a);

// Parses expressions like "C", "F", "C+5F", "C-2F", "3C+F" in the lattice's
// basis labels.
DivisorClass parse_class(const Lattice& l, const std::string& text);

// Singular-fiber configuration: chains[i] rational curves in fiber i.
struct FiberConfig {
    std::vector<long> chains;
};

// Picard number of the fibration: sum(r_i) - s + 2.
long picard_number(const FiberConfig& cfg);

// All multisets {r_i} with sum(r_i) = total_nodes realizing the target
// Picard rank; parts are listed in descending order.
std::vector<FiberConfig> enumerate_max_picard_configs(long total_nodes = 24,
                                                      long target_rank = 20);

}  // namespace reglab::k3

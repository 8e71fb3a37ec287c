#include "reglab/k3.hpp"

#include <algorithm>
#include <cctype>

namespace reglab::k3 {

void Lattice::validate() const {
    if (gram.size() != basis_labels.size())
        throw std::invalid_argument("gram size does not match basis labels");
    for (const auto& row : gram)
        if (row.size() != gram.size()) throw std::invalid_argument("gram matrix is not square");
    for (size_t i = 0; i < gram.size(); ++i)
        for (size_t j = 0; j < gram.size(); ++j)
            if (gram[i][j] != gram[j][i]) throw std::invalid_argument("gram matrix is not symmetric");
}

Lattice bl_lattice() {
    Lattice l{{{-2, 1}, {1, 0}}, {"C", "F"}};
    l.validate();
    return l;
}

long long pair(const Lattice& l, const DivisorClass& a, const DivisorClass& b) {
    if (a.size() != l.rank() || b.size() != l.rank())
        throw std::invalid_argument("class dimension does not match lattice rank");
    long long acc = 0;
    for (size_t i = 0; i < l.rank(); ++i)
        for (size_t j = 0; j < l.rank(); ++j) acc += a[i] * l.gram[i][j] * b[j];
    return acc;
}

long long self_intersection(const Lattice& l, const DivisorClass& a) { return pair(l, a, a); }

DivisorClass parse_class(const Lattice& l, const std::string& text) {
    DivisorClass out(l.rank(), 0);
    size_t i = 0;
    const auto fail = [&] { throw std::invalid_argument("malformed class vector: " + text); };
    while (i < text.size()) {
        long long sign = 1;
        if (text[i] == '+') ++i;
        else if (text[i] == '-') { sign = -1; ++i; }
        long long coef = 1;
        if (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
            coef = 0;
            while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i])))
                coef = coef * 10 + (text[i++] - '0');
        }
        if (i >= text.size()) fail();
        bool matched = false;
        for (size_t b = 0; b < l.basis_labels.size(); ++b) {
            const std::string& lab = l.basis_labels[b];
            if (text.compare(i, lab.size(), lab) == 0) {
                out[b] += sign * coef;
                i += lab.size();
                matched = true;
                break;
            }
        }
        if (!matched) fail();
    }
    return out;
}

long picard_number(const FiberConfig& cfg) {
    if (cfg.chains.empty()) throw std::invalid_argument("empty fiber configuration");
    long sum = 0;
    for (long r : cfg.chains) {
        if (r < 1) throw std::invalid_argument("fiber chain length must be positive");
        sum += r;
    }
    return sum - static_cast<long>(cfg.chains.size()) + 2;
}

namespace {

void partitions_rec(long remaining, long parts, long max_part, std::vector<long>& acc,
                    std::vector<FiberConfig>& out) {
    if (parts == 0) {
        if (remaining == 0) out.push_back(FiberConfig{acc});
        return;
    }
    // descending parts; each part at least 1, leaving room for the rest
    for (long p = std::min(max_part, remaining - (parts - 1)); p >= 1; --p) {
        acc.push_back(p);
        partitions_rec(remaining - p, parts - 1, p, acc, out);
        acc.pop_back();
    }
}

}  // namespace

std::vector<FiberConfig> enumerate_max_picard_configs(long total_nodes, long target_rank) {
    // sum r_i - s + 2 = target with sum r_i = total fixes the number of fibers
    const long s = total_nodes - target_rank + 2;
    std::vector<FiberConfig> out;
    if (s < 1 || s > total_nodes) return out;
    std::vector<long> acc;
    partitions_rec(total_nodes, s, total_nodes, acc, out);
    return out;
}

}  // namespace reglab::k3

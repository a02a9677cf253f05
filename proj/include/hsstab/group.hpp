#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace hsstab {

class GroupTable;
using GroupPtr = std::shared_ptr<const GroupTable>;

// Finite group with canonical element indices 0..order-1, 0 the identity.
// Products come from a dense table for small groups and are computed from the
// family structure above kDenseTableLimit; the semantics are identical.
//
// Element encodings (shared with the irrep catalogs):
//   cyclic m      - the residue itself
//   dihedral m    - rho^r s^f  ->  r + f*m
//   heisenberg p  - unitriangular (a, b, c)  ->  a*p^2 + b*p + c,
//                   (a1,b1,c1)*(a2,b2,c2) = (a1+a2, b1+b2, c1+c2+a1*b2)
//   product       - (g, h)  ->  g*|H| + h
//
// Every supported family carries a power basis: generators k_1..k_r with
// periods m_1..m_r such that g -> k_1^{a_1} ... k_r^{a_r} enumerates the
// group exactly once over 0 <= a_i < m_i. Group averages factor through it.
class GroupTable : public std::enable_shared_from_this<GroupTable> {
public:
    enum class Family { Cyclic, Dihedral, Heisenberg, Product };

    struct PowerBasisEntry {
        std::uint32_t element;
        std::uint32_t period;
    };

    static constexpr std::uint32_t kDenseTableLimit = 2048;
    static constexpr std::uint64_t kOrderBudget = 1000000;

    static GroupPtr cyclic(std::uint32_t m);
    static GroupPtr dihedral(std::uint32_t m);
    static GroupPtr heisenberg(std::uint32_t p);  // p an odd prime; order p^3
    static GroupPtr direct_product(GroupPtr a, GroupPtr b);

    std::uint32_t order() const { return order_; }
    std::uint32_t identity() const { return 0; }
    std::uint32_t mul(std::uint32_t a, std::uint32_t b) const {
        return dense_.empty() ? mul_structural(a, b) : dense_[static_cast<std::size_t>(a) * order_ + b];
    }
    std::uint32_t inv(std::uint32_t a) const { return inverse_[a]; }

    const std::vector<std::uint32_t>& generators() const { return generators_; }
    const std::vector<PowerBasisEntry>& power_basis() const { return power_basis_; }
    const std::string& name() const { return name_; }

    Family family() const { return family_; }
    std::uint32_t family_param() const { return param_; }  // m or p
    GroupPtr product_left() const { return left_; }
    GroupPtr product_right() const { return right_; }

    std::uint32_t power(std::uint32_t g, std::uint64_t e) const;

private:
    GroupTable() = default;
    std::uint32_t mul_structural(std::uint32_t a, std::uint32_t b) const;
    std::uint32_t inv_structural(std::uint32_t a) const;
    void finalize();  // dense table, inverses, closure + power-basis checks

    Family family_ = Family::Cyclic;
    std::uint32_t param_ = 1;
    GroupPtr left_, right_;  // product factors
    std::uint32_t order_ = 1;
    std::string name_;
    std::vector<std::uint32_t> dense_;
    std::vector<std::uint32_t> inverse_;
    std::vector<std::uint32_t> generators_;
    std::vector<PowerBasisEntry> power_basis_;
};

// "cyclic:m", "dihedral:m", "heisenberg:p", "product:SPEC,SPEC" (nested
// products allowed). Throws std::invalid_argument with a position diagnostic.
GroupPtr parse_group_spec(const std::string& spec);

// Axiom verification. Associativity is exhaustive up to order 2000 and
// seeded-sampled above; the other laws are always exhaustive.
struct GroupCheckReport {
    bool identity_law = false;
    bool inverse_law = false;
    bool associative = false;
    bool generators_generate = false;
    bool power_basis_enumerates = false;
    std::uint64_t triples_checked = 0;
    bool associativity_exhaustive = false;
    bool ok() const {
        return identity_law && inverse_law && associative && generators_generate && power_basis_enumerates;
    }
};

GroupCheckReport verify_group(const GroupTable& g, std::uint64_t seed = 0,
                              std::uint64_t sample_triples = 1000000);

}  // namespace hsstab

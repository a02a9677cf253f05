#include "hsstab/group.hpp"

#include <algorithm>
#include <stdexcept>

#include "hsstab/rng.hpp"

namespace hsstab {

namespace {

bool is_prime(std::uint32_t p) {
    if (p < 2) return false;
    for (std::uint32_t d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

struct DihedralElement {
    std::uint32_t rot;
    std::uint32_t flip;
};

// Dihedral element rho^r s^f encoded as r + f*m.
DihedralElement dihedral_decode(std::uint32_t x, std::uint32_t m) { return {x % m, x / m}; }
std::uint32_t dihedral_encode(std::uint32_t rot, std::uint32_t flip, std::uint32_t m) { return rot + flip * m; }

struct HeisenbergElement {
    std::uint32_t a, b, c;
};

// Upper unitriangular matrix with (a, b) off one step above the diagonal and
// c in the corner, encoded as a*p^2 + b*p + c.
HeisenbergElement heisenberg_decode(std::uint32_t x, std::uint32_t p) {
    return {x / (p * p), (x / p) % p, x % p};
}
std::uint32_t heisenberg_encode(std::uint32_t a, std::uint32_t b, std::uint32_t c, std::uint32_t p) {
    return a * p * p + b * p + c;
}

}  // namespace

std::uint32_t GroupTable::mul_structural(std::uint32_t x, std::uint32_t y) const {
    switch (family_) {
        case Family::Cyclic:
            return (x + y) % param_;
        case Family::Dihedral: {
            const std::uint32_t m = param_;
            const auto [r1, f1] = dihedral_decode(x, m);
            const auto [r2, f2] = dihedral_decode(y, m);
            // rho^r1 s^f1 rho^r2 s^f2 = rho^(r1 +- r2) s^(f1 xor f2)
            const std::uint32_t rot = f1 ? (r1 + m - r2) % m : (r1 + r2) % m;
            return dihedral_encode(rot, f1 ^ f2, m);
        }
        case Family::Heisenberg: {
            const std::uint32_t p = param_;
            const auto [a1, b1, c1] = heisenberg_decode(x, p);
            const auto [a2, b2, c2] = heisenberg_decode(y, p);
            return heisenberg_encode((a1 + a2) % p, (b1 + b2) % p, (c1 + c2 + a1 * b2) % p, p);
        }
        case Family::Product: {
            const std::uint32_t ro = right_->order();
            return left_->mul(x / ro, y / ro) * ro + right_->mul(x % ro, y % ro);
        }
    }
    return 0;
}

std::uint32_t GroupTable::inv_structural(std::uint32_t x) const {
    switch (family_) {
        case Family::Cyclic:
            return (param_ - x) % param_;
        case Family::Dihedral: {
            const auto [r, f] = dihedral_decode(x, param_);
            return f ? x : dihedral_encode((param_ - r) % param_, 0, param_);
        }
        case Family::Heisenberg: {
            const std::uint32_t p = param_;
            const auto [a, b, c] = heisenberg_decode(x, p);
            return heisenberg_encode((p - a) % p, (p - b) % p, (a * b % p + p - c) % p, p);
        }
        case Family::Product: {
            const std::uint32_t ro = right_->order();
            return left_->inv(x / ro) * ro + right_->inv(x % ro);
        }
    }
    return 0;
}

std::uint32_t GroupTable::power(std::uint32_t g, std::uint64_t e) const {
    std::uint32_t acc = identity();
    std::uint32_t base = g;
    while (e > 0) {
        if (e & 1) acc = mul(acc, base);
        base = mul(base, base);
        e >>= 1;
    }
    return acc;
}

void GroupTable::finalize() {
    if (order_ <= kDenseTableLimit) {
        dense_.resize(static_cast<std::size_t>(order_) * order_);
        for (std::uint32_t a = 0; a < order_; ++a)
            for (std::uint32_t b = 0; b < order_; ++b)
                dense_[static_cast<std::size_t>(a) * order_ + b] = mul_structural(a, b);
    }

    // Generator closure (BFS). Cheap even at the order budget.
    std::vector<bool> seen(order_, false);
    std::vector<std::uint32_t> frontier{identity()};
    seen[identity()] = true;
    std::size_t reached = 1;
    while (!frontier.empty()) {
        std::vector<std::uint32_t> next;
        for (std::uint32_t g : frontier) {
            for (std::uint32_t s : generators_) {
                const std::uint32_t h = mul(g, s);
                if (!seen[h]) {
                    seen[h] = true;
                    ++reached;
                    next.push_back(h);
                }
            }
        }
        frontier = std::move(next);
    }
    if (reached != order_) throw std::logic_error("GroupTable: generators do not generate");

    // Power basis enumerates the group exactly once.
    std::vector<bool> hit(order_, false);
    std::uint64_t count = 0;
    std::vector<std::uint32_t> idx(power_basis_.size(), 0);
    for (;;) {
        std::uint32_t g = identity();
        for (std::size_t i = 0; i < power_basis_.size(); ++i)
            g = mul(g, power(power_basis_[i].element, idx[i]));
        if (hit[g]) throw std::logic_error("GroupTable: power basis repeats an element");
        hit[g] = true;
        ++count;
        std::size_t carry = power_basis_.size();
        while (carry > 0) {
            if (++idx[carry - 1] < power_basis_[carry - 1].period) break;
            idx[carry - 1] = 0;
            --carry;
        }
        if (carry == 0) break;
    }
    if (count != order_) throw std::logic_error("GroupTable: power basis misses elements");

    inverse_.resize(order_);
    for (std::uint32_t a = 0; a < order_; ++a) inverse_[a] = inv_structural(a);
    for (std::uint32_t a = 0; a < order_; ++a)
        if (mul(a, inverse_[a]) != identity() || mul(inverse_[a], a) != identity())
            throw std::logic_error("GroupTable: inverse law failed");
}

GroupPtr GroupTable::cyclic(std::uint32_t m) {
    if (m < 1) throw std::invalid_argument("cyclic: m must be >= 1");
    auto g = std::shared_ptr<GroupTable>(new GroupTable());
    g->family_ = Family::Cyclic;
    g->param_ = m;
    g->order_ = m;
    g->name_ = "cyclic:" + std::to_string(m);
    g->generators_ = {m > 1 ? 1u : 0u};
    if (m > 1) g->power_basis_ = {{1u, m}};
    g->finalize();
    return g;
}

GroupPtr GroupTable::dihedral(std::uint32_t m) {
    if (m < 1) throw std::invalid_argument("dihedral: m must be >= 1");
    auto g = std::shared_ptr<GroupTable>(new GroupTable());
    g->family_ = Family::Dihedral;
    g->param_ = m;
    g->order_ = 2 * m;
    g->name_ = "dihedral:" + std::to_string(m);
    const std::uint32_t flip = dihedral_encode(0, 1, m);
    if (m > 1)
        g->generators_ = {1u, flip};
    else
        g->generators_ = {flip};
    if (m > 1) g->power_basis_.push_back({1u, m});
    g->power_basis_.push_back({flip, 2u});
    g->finalize();
    return g;
}

GroupPtr GroupTable::heisenberg(std::uint32_t p) {
    if (p == 2 || !is_prime(p)) throw std::invalid_argument("heisenberg: p must be an odd prime");
    const std::uint64_t order = static_cast<std::uint64_t>(p) * p * p;
    if (order > kOrderBudget) throw std::invalid_argument("heisenberg: order exceeds budget");
    auto g = std::shared_ptr<GroupTable>(new GroupTable());
    g->family_ = Family::Heisenberg;
    g->param_ = p;
    g->order_ = static_cast<std::uint32_t>(order);
    g->name_ = "heisenberg:" + std::to_string(p);
    const std::uint32_t x = heisenberg_encode(1, 0, 0, p);
    const std::uint32_t y = heisenberg_encode(0, 1, 0, p);
    const std::uint32_t z = heisenberg_encode(0, 0, 1, p);
    g->generators_ = {x, y};
    g->power_basis_ = {{x, p}, {y, p}, {z, p}};
    g->finalize();
    return g;
}

GroupPtr GroupTable::direct_product(GroupPtr a, GroupPtr b) {
    if (!a || !b) throw std::invalid_argument("direct_product: null factor");
    const std::uint64_t order = static_cast<std::uint64_t>(a->order()) * b->order();
    if (order > kOrderBudget) throw std::invalid_argument("direct_product: order exceeds budget");
    auto g = std::shared_ptr<GroupTable>(new GroupTable());
    g->family_ = Family::Product;
    g->left_ = a;
    g->right_ = b;
    g->order_ = static_cast<std::uint32_t>(order);
    g->name_ = "product:" + a->name() + "," + b->name();
    const std::uint32_t ro = b->order();
    for (std::uint32_t s : a->generators()) g->generators_.push_back(s * ro);
    for (std::uint32_t s : b->generators()) g->generators_.push_back(s);
    for (const auto& e : a->power_basis()) g->power_basis_.push_back({e.element * ro, e.period});
    for (const auto& e : b->power_basis()) g->power_basis_.push_back({e.element, e.period});
    g->finalize();
    return g;
}

namespace {

GroupPtr parse_spec_at(const std::string& spec, std::size_t& pos);

std::uint32_t parse_uint_at(const std::string& spec, std::size_t& pos) {
    const std::size_t start = pos;
    std::uint64_t value = 0;
    while (pos < spec.size() && spec[pos] >= '0' && spec[pos] <= '9') {
        value = value * 10 + (spec[pos] - '0');
        if (value > UINT32_MAX) throw std::invalid_argument("group spec: integer overflow at position " +
                                                            std::to_string(start));
        ++pos;
    }
    if (pos == start)
        throw std::invalid_argument("group spec: expected integer at position " + std::to_string(start));
    return static_cast<std::uint32_t>(value);
}

GroupPtr parse_spec_at(const std::string& spec, std::size_t& pos) {
    const std::size_t start = pos;
    const std::size_t colon = spec.find(':', pos);
    if (colon == std::string::npos)
        throw std::invalid_argument("group spec: expected ':' after family name at position " +
                                    std::to_string(start));
    const std::string family = spec.substr(pos, colon - pos);
    pos = colon + 1;
    if (family == "cyclic") return GroupTable::cyclic(parse_uint_at(spec, pos));
    if (family == "dihedral") return GroupTable::dihedral(parse_uint_at(spec, pos));
    if (family == "heisenberg") return GroupTable::heisenberg(parse_uint_at(spec, pos));
    if (family == "product") {
        GroupPtr a = parse_spec_at(spec, pos);
        if (pos >= spec.size() || spec[pos] != ',')
            throw std::invalid_argument("group spec: expected ',' between product factors at position " +
                                        std::to_string(pos));
        ++pos;
        GroupPtr b = parse_spec_at(spec, pos);
        return GroupTable::direct_product(a, b);
    }
    throw std::invalid_argument("group spec: unknown family '" + family + "' at position " +
                                std::to_string(start));
}

}  // namespace

GroupPtr parse_group_spec(const std::string& spec) {
    std::size_t pos = 0;
    GroupPtr g = parse_spec_at(spec, pos);
    if (pos != spec.size())
        throw std::invalid_argument("group spec: trailing characters at position " + std::to_string(pos));
    return g;
}

GroupCheckReport verify_group(const GroupTable& g, std::uint64_t seed, std::uint64_t sample_triples) {
    GroupCheckReport report;
    const std::uint32_t n = g.order();
    const std::uint32_t e = g.identity();

    report.identity_law = true;
    for (std::uint32_t a = 0; a < n; ++a)
        if (g.mul(e, a) != a || g.mul(a, e) != a) report.identity_law = false;

    report.inverse_law = true;
    for (std::uint32_t a = 0; a < n; ++a)
        if (g.mul(a, g.inv(a)) != e || g.mul(g.inv(a), a) != e) report.inverse_law = false;

    report.associative = true;
    if (n <= 2000) {
        report.associativity_exhaustive = true;
        for (std::uint32_t a = 0; a < n && report.associative; ++a)
            for (std::uint32_t b = 0; b < n && report.associative; ++b)
                for (std::uint32_t c = 0; c < n; ++c) {
                    if (g.mul(g.mul(a, b), c) != g.mul(a, g.mul(b, c))) {
                        report.associative = false;
                        break;
                    }
                }
        report.triples_checked = static_cast<std::uint64_t>(n) * n * n;
    } else {
        Rng rng(mix_seed(seed, 0xa550));
        for (std::uint64_t t = 0; t < sample_triples; ++t) {
            const auto a = static_cast<std::uint32_t>(rng.uniform_below(n));
            const auto b = static_cast<std::uint32_t>(rng.uniform_below(n));
            const auto c = static_cast<std::uint32_t>(rng.uniform_below(n));
            if (g.mul(g.mul(a, b), c) != g.mul(a, g.mul(b, c))) {
                report.associative = false;
                break;
            }
        }
        report.triples_checked = sample_triples;
    }

    // Closure and power-basis enumeration are revalidated here even though
    // construction already enforces them.
    std::vector<bool> seen(n, false);
    std::vector<std::uint32_t> frontier{e};
    seen[e] = true;
    std::size_t reached = 1;
    while (!frontier.empty()) {
        std::vector<std::uint32_t> next;
        for (std::uint32_t x : frontier)
            for (std::uint32_t s : g.generators()) {
                const std::uint32_t h = g.mul(x, s);
                if (!seen[h]) {
                    seen[h] = true;
                    ++reached;
                    next.push_back(h);
                }
            }
        frontier = std::move(next);
    }
    report.generators_generate = reached == n;

    std::vector<bool> hit(n, false);
    std::uint64_t count = 0;
    std::vector<std::uint32_t> idx(g.power_basis().size(), 0);
    bool repeats = false;
    for (;;) {
        std::uint32_t x = e;
        for (std::size_t i = 0; i < g.power_basis().size(); ++i)
            x = g.mul(x, g.power(g.power_basis()[i].element, idx[i]));
        if (hit[x]) repeats = true;
        hit[x] = true;
        ++count;
        std::size_t carry = g.power_basis().size();
        while (carry > 0) {
            if (++idx[carry - 1] < g.power_basis()[carry - 1].period) break;
            idx[carry - 1] = 0;
            --carry;
        }
        if (carry == 0) break;
    }
    report.power_basis_enumerates = !repeats && count == n;
    return report;
}

}  // namespace hsstab

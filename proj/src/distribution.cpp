#include "ringwalk/distribution.hpp"

namespace ringwalk {

std::vector<int> Distribution::support() const {
    std::vector<int> s;
    for (int i = 0; i < n; ++i)
        if (weights[i] != 0) s.push_back(i);
    return s;
}

void Distribution::validate() const {
    if (static_cast<int>(weights.size()) != n)
        throw ValidationError("distribution length mismatch");
    Rat sum = 0;
    for (const Rat& w : weights) {
        if (w < 0) throw ValidationError("distribution has a negative weight");
        sum += w;
    }
    if (sum != 1) throw ValidationError("weights must sum to 1 (got " + rational_to_string(sum) + ")");
}

Distribution uniform_distribution(int n) {
    Distribution d;
    d.n = n;
    d.weights.assign(n, Rat(1, n));
    for (Rat& w : d.weights) w.canonicalize();
    return d;
}

Distribution point_mass(int n, int at) {
    Distribution d;
    d.n = n;
    d.weights.assign(n, Rat(0));
    d.weights[at] = 1;
    return d;
}

Distribution distribution_from_strings(const std::vector<std::string>& weights) {
    Distribution d;
    d.n = static_cast<int>(weights.size());
    d.weights.reserve(weights.size());
    for (const auto& s : weights) d.weights.push_back(parse_rational(s));
    d.validate();
    return d;
}

std::optional<std::pair<int, int>> validate_constant_on_associates(const FiniteModule& v,
                                                                   const Distribution& p) {
    if (p.n != v.n) throw DimensionMismatch("P has wrong length for module");
    UnitGroup u = units(v.ring);
    for (int x = 0; x < v.n; ++x)
        for (int unit : u.members) {
            int y = v.act(unit, x);
            if (p.weights[x] != p.weights[y]) return std::make_pair(x, y);
        }
    return std::nullopt;
}

Distribution symmetrize_over_associates(const FiniteModule& v, const Distribution& p) {
    if (p.n != v.n) throw DimensionMismatch("P has wrong length for module");
    UnitGroup u = units(v.ring);
    Distribution out;
    out.n = v.n;
    out.weights.assign(v.n, Rat(0));
    std::vector<bool> done(v.n, false);
    for (int x = 0; x < v.n; ++x) {
        if (done[x]) continue;
        std::vector<int> orbit = associates_orbit(v, u, x);
        Rat total = 0;
        for (int y : orbit) total += p.weights[y];
        Rat avg = total / Rat(static_cast<int>(orbit.size()));
        for (int y : orbit) {
            out.weights[y] = avg;
            done[y] = true;
        }
    }
    return out;
}

} // namespace ringwalk

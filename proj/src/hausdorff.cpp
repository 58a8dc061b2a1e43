#include "hauslab/hausdorff.hpp"

#include <algorithm>
#include <cstdint>
#include <limits>
#include <thread>

#include "hauslab/error.hpp"

namespace hauslab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Fixed-seed shuffle. Scanning B in random order lets the early break in
// the directed distance fire quickly on rasterised (grid ordered) sets.
std::vector<PointIndex> scan_order(std::span<const PointIndex> members) {
    std::vector<PointIndex> order(members.begin(), members.end());
    if (order.size() < 64) {
        return order;
    }
    std::uint64_t state = 0x9e3779b97f4a7c15ULL ^ order.size();
    for (std::size_t i = order.size() - 1; i > 0; --i) {
        state += 0x9e3779b97f4a7c15ULL;
        std::uint64_t z = state;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        z ^= z >> 31;
        std::swap(order[i], order[z % (i + 1)]);
    }
    return order;
}

double min_distance(const FiniteMetricSpace& space, PointIndex x, std::span<const PointIndex> set) {
    double best = kInf;
    for (auto y : set) {
        best = std::min(best, space.distance(x, y));
    }
    return best;
}

// max over x in `from` of d(x, to), skipping members of `to`, with the
// early break: once d(x, y) <= current max, x cannot raise the max.
double directed_kernel(const FiniteMetricSpace& space,
                       std::span<const PointIndex> from,
                       std::span<const PointIndex> to_order,
                       const std::vector<std::uint8_t>& in_to) {
    double cmax = 0.0;
    for (auto x : from) {
        if (in_to[x]) {
            continue;
        }
        double cmin = kInf;
        for (auto y : to_order) {
            const double d = space.distance(x, y);
            if (d < cmin) {
                cmin = d;
                if (cmin <= cmax) {
                    break;
                }
            }
        }
        cmax = std::max(cmax, cmin);
    }
    return cmax;
}

void check_ambient(const FiniteMetricSpace& space, PointIndex x) {
    if (x >= space.size()) {
        throw DomainError("point index " + std::to_string(x) + " outside ambient space");
    }
}

}  // namespace

ExtendedReal dist_point_to_set(PointIndex x, const PointSet& a) {
    check_ambient(a.space(), x);
    return ExtendedReal(min_distance(a.space(), x, a.members()));
}

ExtendedReal dist_point_to_set(PointIndex x, const Complement& a) {
    check_ambient(*a.space_ptr(), x);
    if (a.empty()) {
        return ExtendedReal::infinity();
    }
    return ExtendedReal(min_distance(*a.space_ptr(), x, a.members()));
}

ExtendedReal dist_point_to_set(const FiniteMetricSpace& space, PointIndex x, const PointSet& a) {
    if (&space != &a.space()) {
        throw AmbientMismatch();
    }
    return dist_point_to_set(x, a);
}

PointIndex nearest_point(PointIndex x, const PointSet& a) {
    check_ambient(a.space(), x);
    double best = kInf;
    PointIndex arg = a.members().front();
    for (auto y : a.members()) {
        const double d = a.space().distance(x, y);
        if (d < best) {
            best = d;
            arg = y;
        }
    }
    return arg;
}

ExtendedReal directed_hausdorff(const PointSet& a, const PointSet& b, Parallelism par) {
    require_same_space(a, b);
    const auto& space = a.space();
    std::vector<std::uint8_t> in_b(space.size(), 0);
    for (auto y : b.members()) {
        in_b[y] = 1;
    }
    const auto from = scan_order(a.members());
    const auto to = scan_order(b.members());

    const unsigned workers = std::max(1u, std::min<unsigned>(par.threads, static_cast<unsigned>(from.size() / 256 + 1)));
    if (workers == 1) {
        return ExtendedReal(directed_kernel(space, from, to, in_b));
    }
    std::vector<double> partial(workers, 0.0);
    {
        std::vector<std::jthread> pool;
        const std::size_t chunk = (from.size() + workers - 1) / workers;
        for (unsigned w = 0; w < workers; ++w) {
            const std::size_t lo = std::min(from.size(), w * chunk);
            const std::size_t hi = std::min(from.size(), lo + chunk);
            pool.emplace_back([&, w, lo, hi] {
                partial[w] = directed_kernel(space, std::span(from).subspan(lo, hi - lo), to, in_b);
            });
        }
    }
    return ExtendedReal(*std::max_element(partial.begin(), partial.end()));
}

DirectedWitness directed_hausdorff_witness(const PointSet& a, const PointSet& b) {
    require_same_space(a, b);
    DirectedWitness w{a.members().front(), a.members().front(), -1.0};
    for (auto x : a.members()) {
        const PointIndex y = nearest_point(x, b);
        const double d = a.space().distance(x, y);
        if (d > w.distance) {
            w = {x, y, d};
        }
    }
    return w;
}

ExtendedReal hausdorff(const PointSet& a, const PointSet& b, Parallelism par) {
    return max(directed_hausdorff(a, b, par), directed_hausdorff(b, a, par));
}

ExtendedReal hausdorff_via_neighborhoods(const PointSet& a, const PointSet& b) {
    require_same_space(a, b);
    const auto& space = a.space();
    std::vector<double> radii{0.0};
    for (auto x : a.members()) {
        for (auto y : b.members()) {
            radii.push_back(space.distance(x, y));
        }
    }
    std::sort(radii.begin(), radii.end());
    radii.erase(std::unique(radii.begin(), radii.end()), radii.end());

    // every point of `s` lies in the closed r-ball of some point of `t`
    auto covered = [&space](const PointSet& s, const PointSet& t, double r) {
        return std::all_of(s.members().begin(), s.members().end(), [&](PointIndex x) {
            return std::any_of(t.members().begin(), t.members().end(),
                               [&](PointIndex y) { return space.distance(x, y) <= r; });
        });
    };
    // Coverage is monotone in r and holds at the largest candidate.
    auto it = std::partition_point(radii.begin(), radii.end(), [&](double r) {
        return !(covered(a, b, r) && covered(b, a, r));
    });
    return ExtendedReal(*it);
}

PointSet neighborhood(const PointSet& a, double eps) {
    if (!(eps > 0.0)) {
        throw DomainError("neighborhood radius must be positive");
    }
    const auto& space = a.space();
    std::vector<PointIndex> out;
    for (PointIndex y = 0; y < space.size(); ++y) {
        for (auto x : a.members()) {
            if (space.distance(x, y) < eps) {
                out.push_back(y);
                break;
            }
        }
    }
    return PointSet(a.space_ptr(), std::move(out));
}

double diameter(const PointSet& a, Parallelism par) {
    const auto& space = a.space();
    const auto m = a.members();
    auto rows = [&](std::size_t lo, std::size_t step) {
        double best = 0.0;
        for (std::size_t i = lo; i < m.size(); i += step) {
            for (std::size_t j = i + 1; j < m.size(); ++j) {
                best = std::max(best, space.distance(m[i], m[j]));
            }
        }
        return best;
    };
    const unsigned workers = std::max(1u, std::min<unsigned>(par.threads, static_cast<unsigned>(m.size() / 512 + 1)));
    if (workers == 1) {
        return rows(0, 1);
    }
    std::vector<double> partial(workers, 0.0);
    {
        std::vector<std::jthread> pool;
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back([&, w] { partial[w] = rows(w, workers); });
        }
    }
    return *std::max_element(partial.begin(), partial.end());
}

Complement complement(const PointSet& a) {
    return Complement(a);
}

ExtendedReal gap_functional(const PointSet& a) {
    const Complement rest(a);
    if (rest.empty()) {
        return ExtendedReal::infinity();
    }
    double best = 0.0;
    for (auto x : a.members()) {
        best = std::max(best, min_distance(a.space(), x, rest.members()));
    }
    return ExtendedReal(best);
}

double isolation(const FiniteMetricSpace& space, PointIndex x) {
    if (space.size() < 2) {
        throw DomainError("isolation needs a space with at least two points");
    }
    check_ambient(space, x);
    double best = kInf;
    for (PointIndex y = 0; y < space.size(); ++y) {
        if (y != x) {
            best = std::min(best, space.distance(x, y));
        }
    }
    return best;
}

std::optional<ExtendedReal> complement_hausdorff(const PointSet& a, const PointSet& b) {
    require_same_space(a, b);
    auto ca = Complement(a).to_point_set();
    auto cb = Complement(b).to_point_set();
    if (!ca || !cb) {
        return std::nullopt;
    }
    return hausdorff(*ca, *cb);
}

ComplementReport complement_hausdorff_inequalities(const PointSet& a, const PointSet& b) {
    require_same_space(a, b);
    ComplementReport report;
    const ExtendedReal gap_a = gap_functional(a);
    const ExtendedReal gap_b = gap_functional(b);
    const auto lhs = complement_hausdorff(a, b);

    report.a.applicable = true;
    report.a.rhs = max(gap_a, gap_b);
    if (lhs) {
        report.a.lhs = *lhs;
        report.a.satisfied = *lhs <= report.a.rhs;
    } else {
        report.a.vacuous = true;
    }

    if (disjoint(a, b)) {
        report.b.applicable = true;
        report.b.lhs = max(gap_a, gap_b);
        report.b.rhs = hausdorff(a, b);
        report.b.satisfied = report.b.lhs <= report.b.rhs;
    }

    const bool a_in_b = a.is_subset_of(b);
    const bool b_in_a = b.is_subset_of(a);
    if (a_in_b || b_in_a) {
        report.c.applicable = true;
        report.c.rhs = a_in_b ? gap_b : gap_a;
        if (lhs) {
            report.c.lhs = *lhs;
            report.c.satisfied = *lhs <= report.c.rhs;
        } else {
            report.c.vacuous = true;
        }
    }
    return report;
}

}  // namespace hauslab

#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hauslab/metric_space.hpp"

namespace hauslab {

/// A nonempty subset of an ambient finite space: an element of C_b(X).
/// Members are kept sorted and unique.
class PointSet {
public:
    PointSet(SpacePtr space, std::vector<PointIndex> members);

    static PointSet full(SpacePtr space);
    static PointSet singleton(SpacePtr space, PointIndex x);
    /// Resolves point ids against the space; unknown ids throw DomainError.
    static PointSet from_ids(SpacePtr space, std::span<const std::string> ids);

    const FiniteMetricSpace& space() const noexcept { return *space_; }
    const SpacePtr& space_ptr() const noexcept { return space_; }

    std::span<const PointIndex> members() const noexcept { return members_; }
    std::size_t size() const noexcept { return members_.size(); }
    bool contains(PointIndex x) const;
    bool is_subset_of(const PointSet& other) const;
    bool is_full() const noexcept { return members_.size() == space_->size(); }
    std::vector<std::string> ids() const;

    /// Same ambient object and same members.
    friend bool operator==(const PointSet& a, const PointSet& b) {
        return a.space_ == b.space_ && a.members_ == b.members_;
    }

private:
    SpacePtr space_;
    std::vector<PointIndex> members_;
};

/// X \ A. May be empty; an empty complement is a value, not an error.
class Complement {
public:
    explicit Complement(const PointSet& set);

    bool empty() const noexcept { return members_.empty(); }
    std::span<const PointIndex> members() const noexcept { return members_; }
    const SpacePtr& space_ptr() const noexcept { return space_; }
    /// nullopt when empty.
    std::optional<PointSet> to_point_set() const;

private:
    SpacePtr space_;
    std::vector<PointIndex> members_;
};

/// Throws AmbientMismatch unless both sets share one space object.
void require_same_space(const PointSet& a, const PointSet& b);

PointSet set_union(const PointSet& a, const PointSet& b);
/// nullopt when the sets are disjoint.
std::optional<PointSet> set_intersection(const PointSet& a, const PointSet& b);
bool disjoint(const PointSet& a, const PointSet& b);

/// Every nonempty subset of a space with at most 20 points, in bitmask order.
std::vector<PointSet> all_subsets(const SpacePtr& space);

/// "{a,b,c}" built from point ids.
std::string describe(const PointSet& set);

}  // namespace hauslab

#include "hauslab/point_set.hpp"

#include <algorithm>
#include <iterator>

#include "hauslab/error.hpp"

namespace hauslab {

PointSet::PointSet(SpacePtr space, std::vector<PointIndex> members)
    : space_(std::move(space)), members_(std::move(members)) {
    if (!space_) {
        throw DomainError("point set without an ambient space");
    }
    std::sort(members_.begin(), members_.end());
    members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
    if (members_.empty()) {
        throw DomainError("point sets must be nonempty");
    }
    if (members_.back() >= space_->size()) {
        throw DomainError("point index " + std::to_string(members_.back()) +
                          " outside ambient space of size " + std::to_string(space_->size()));
    }
}

PointSet PointSet::full(SpacePtr space) {
    std::vector<PointIndex> all(space->size());
    for (PointIndex i = 0; i < all.size(); ++i) {
        all[i] = i;
    }
    return PointSet(std::move(space), std::move(all));
}

PointSet PointSet::singleton(SpacePtr space, PointIndex x) {
    return PointSet(std::move(space), {x});
}

PointSet PointSet::from_ids(SpacePtr space, std::span<const std::string> ids) {
    std::vector<PointIndex> members;
    members.reserve(ids.size());
    for (const auto& id : ids) {
        auto idx = space->find(id);
        if (!idx) {
            throw DomainError("unknown point id '" + id + "'");
        }
        members.push_back(*idx);
    }
    return PointSet(std::move(space), std::move(members));
}

bool PointSet::contains(PointIndex x) const {
    return std::binary_search(members_.begin(), members_.end(), x);
}

bool PointSet::is_subset_of(const PointSet& other) const {
    require_same_space(*this, other);
    return std::includes(other.members_.begin(), other.members_.end(), members_.begin(),
                         members_.end());
}

std::vector<std::string> PointSet::ids() const {
    std::vector<std::string> out;
    out.reserve(members_.size());
    for (auto i : members_) {
        out.push_back(space_->id(i));
    }
    return out;
}

Complement::Complement(const PointSet& set) : space_(set.space_ptr()) {
    auto in = set.members();
    members_.reserve(space_->size() - in.size());
    auto it = in.begin();
    for (PointIndex i = 0; i < space_->size(); ++i) {
        if (it != in.end() && *it == i) {
            ++it;
        } else {
            members_.push_back(i);
        }
    }
}

std::optional<PointSet> Complement::to_point_set() const {
    if (members_.empty()) {
        return std::nullopt;
    }
    return PointSet(space_, members_);
}

void require_same_space(const PointSet& a, const PointSet& b) {
    if (a.space_ptr() != b.space_ptr()) {
        throw AmbientMismatch();
    }
}

PointSet set_union(const PointSet& a, const PointSet& b) {
    require_same_space(a, b);
    std::vector<PointIndex> out;
    std::set_union(a.members().begin(), a.members().end(), b.members().begin(), b.members().end(),
                   std::back_inserter(out));
    return PointSet(a.space_ptr(), std::move(out));
}

std::optional<PointSet> set_intersection(const PointSet& a, const PointSet& b) {
    require_same_space(a, b);
    std::vector<PointIndex> out;
    std::set_intersection(a.members().begin(), a.members().end(), b.members().begin(),
                          b.members().end(), std::back_inserter(out));
    if (out.empty()) {
        return std::nullopt;
    }
    return PointSet(a.space_ptr(), std::move(out));
}

bool disjoint(const PointSet& a, const PointSet& b) {
    return !set_intersection(a, b).has_value();
}

std::vector<PointSet> all_subsets(const SpacePtr& space) {
    const std::size_t n = space->size();
    if (n > 20) {
        throw DomainError("all_subsets is limited to spaces of at most 20 points");
    }
    std::vector<PointSet> out;
    out.reserve((std::size_t{1} << n) - 1);
    for (std::size_t mask = 1; mask < (std::size_t{1} << n); ++mask) {
        std::vector<PointIndex> members;
        for (PointIndex i = 0; i < n; ++i) {
            if (mask & (std::size_t{1} << i)) {
                members.push_back(i);
            }
        }
        out.emplace_back(space, std::move(members));
    }
    return out;
}

std::string describe(const PointSet& set) {
    std::string out = "{";
    bool first = true;
    for (auto i : set.members()) {
        if (!first) out += ",";
        out += set.space().id(i);
        first = false;
    }
    return out + "}";
}

}  // namespace hauslab

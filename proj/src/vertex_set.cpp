#include "qk/vertex_set.hpp"

#include <stdexcept>
#include <string>

namespace qk {

namespace {

void check_member(Vertex v, std::size_t universe) {
    if (v >= universe)
        throw std::out_of_range("vertex " + std::to_string(v) + " outside universe of size " +
                                std::to_string(universe));
}

} // namespace

VertexSet::VertexSet(std::size_t universe, std::initializer_list<Vertex> members) : VertexSet(universe) {
    for (Vertex v : members)
        insert(v);
}

VertexSet VertexSet::full(std::size_t universe) {
    VertexSet set(universe);
    for (auto& w : set.words_)
        w = ~std::uint64_t{0};
    if (universe % 64 != 0)
        set.words_.back() = (std::uint64_t{1} << (universe % 64)) - 1;
    return set;
}

VertexSet VertexSet::from_members(std::size_t universe, std::span<const Vertex> members) {
    VertexSet set(universe);
    for (Vertex v : members)
        set.insert(v);
    return set;
}

VertexSet VertexSet::from_mask(std::size_t universe, std::uint64_t mask) {
    if (universe > 64)
        throw std::invalid_argument("from_mask requires a universe of at most 64 vertices");
    VertexSet set(universe);
    if (universe < 64)
        mask &= (std::uint64_t{1} << universe) - 1;
    if (universe > 0)
        set.words_[0] = mask;
    return set;
}

std::size_t VertexSet::size() const {
    std::size_t count = 0;
    for (auto w : words_)
        count += static_cast<std::size_t>(std::popcount(w));
    return count;
}

bool VertexSet::empty() const {
    for (auto w : words_)
        if (w != 0)
            return false;
    return true;
}

void VertexSet::insert(Vertex v) {
    check_member(v, universe_);
    words_[v >> 6] |= std::uint64_t{1} << (v & 63);
}

void VertexSet::erase(Vertex v) {
    check_member(v, universe_);
    words_[v >> 6] &= ~(std::uint64_t{1} << (v & 63));
}

void VertexSet::clear() {
    for (auto& w : words_)
        w = 0;
}

std::optional<Vertex> VertexSet::lowest() const {
    auto it = begin();
    if (it == end())
        return std::nullopt;
    return *it;
}

std::vector<Vertex> VertexSet::members() const { return {begin(), end()}; }

std::uint64_t VertexSet::mask() const {
    if (universe_ > 64)
        throw std::logic_error("mask() requires a universe of at most 64 vertices");
    return words_.empty() ? 0 : words_[0];
}

bool VertexSet::is_subset_of(const VertexSet& other) const {
    check_same_universe(other);
    for (std::size_t i = 0; i < words_.size(); ++i)
        if (words_[i] & ~other.words_[i])
            return false;
    return true;
}

bool VertexSet::intersects(const VertexSet& other) const {
    check_same_universe(other);
    for (std::size_t i = 0; i < words_.size(); ++i)
        if (words_[i] & other.words_[i])
            return true;
    return false;
}

VertexSet& VertexSet::operator|=(const VertexSet& other) {
    check_same_universe(other);
    for (std::size_t i = 0; i < words_.size(); ++i)
        words_[i] |= other.words_[i];
    return *this;
}

VertexSet& VertexSet::operator&=(const VertexSet& other) {
    check_same_universe(other);
    for (std::size_t i = 0; i < words_.size(); ++i)
        words_[i] &= other.words_[i];
    return *this;
}

VertexSet& VertexSet::operator-=(const VertexSet& other) {
    check_same_universe(other);
    for (std::size_t i = 0; i < words_.size(); ++i)
        words_[i] &= ~other.words_[i];
    return *this;
}

VertexSet VertexSet::complement() const { return full(universe_) - *this; }

void VertexSet::check_same_universe(const VertexSet& other) const {
    if (universe_ != other.universe_)
        throw std::invalid_argument("vertex set universe mismatch (" + std::to_string(universe_) + " vs " +
                                    std::to_string(other.universe_) + ")");
}

} // namespace qk

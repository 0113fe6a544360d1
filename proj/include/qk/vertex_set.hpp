#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <iterator>
#include <optional>
#include <span>
#include <vector>

namespace qk {

using Vertex = std::uint32_t;

/// Subset of a fixed universe {0, ..., n-1}, stored as a packed bitset.
///
/// Binary operations require both operands to share the same universe and
/// throw std::invalid_argument otherwise.
class VertexSet {
public:
    class const_iterator {
    public:
        using iterator_category = std::forward_iterator_tag;
        using value_type = Vertex;
        using difference_type = std::ptrdiff_t;
        using pointer = const Vertex*;
        using reference = Vertex;

        const_iterator() = default;
        const_iterator(const std::uint64_t* words, std::size_t word_count, std::size_t index)
            : words_(words), word_count_(word_count), index_(index) {
            if (index_ < word_count_) {
                current_ = words_[index_];
                skip_empty();
            }
        }

        Vertex operator*() const {
            return static_cast<Vertex>(index_ * 64 + static_cast<std::size_t>(std::countr_zero(current_)));
        }
        const_iterator& operator++() {
            current_ &= current_ - 1;
            skip_empty();
            return *this;
        }
        const_iterator operator++(int) {
            auto copy = *this;
            ++*this;
            return copy;
        }
        bool operator==(const const_iterator& other) const {
            return index_ == other.index_ && current_ == other.current_;
        }

    private:
        void skip_empty() {
            while (current_ == 0 && ++index_ < word_count_)
                current_ = words_[index_];
            if (index_ >= word_count_) {
                index_ = word_count_;
                current_ = 0;
            }
        }

        const std::uint64_t* words_ = nullptr;
        std::size_t word_count_ = 0;
        std::size_t index_ = 0;
        std::uint64_t current_ = 0;
    };

    VertexSet() = default;
    explicit VertexSet(std::size_t universe) : universe_(universe), words_((universe + 63) / 64, 0) {}
    VertexSet(std::size_t universe, std::initializer_list<Vertex> members);

    static VertexSet full(std::size_t universe);
    static VertexSet from_members(std::size_t universe, std::span<const Vertex> members);
    static VertexSet from_mask(std::size_t universe, std::uint64_t mask);

    std::size_t universe() const { return universe_; }
    std::size_t size() const;
    bool empty() const;

    bool contains(Vertex v) const { return v < universe_ && (words_[v >> 6] >> (v & 63)) & 1u; }
    void insert(Vertex v);
    void erase(Vertex v);
    void clear();

    std::optional<Vertex> lowest() const;
    std::vector<Vertex> members() const;

    /// Single-word view; only valid when universe() <= 64.
    std::uint64_t mask() const;
    std::span<const std::uint64_t> words() const { return words_; }

    bool is_subset_of(const VertexSet& other) const;
    bool intersects(const VertexSet& other) const;

    VertexSet& operator|=(const VertexSet& other);
    VertexSet& operator&=(const VertexSet& other);
    VertexSet& operator-=(const VertexSet& other);
    /// Complement within the universe.
    VertexSet complement() const;

    friend VertexSet operator|(VertexSet a, const VertexSet& b) { return a |= b; }
    friend VertexSet operator&(VertexSet a, const VertexSet& b) { return a &= b; }
    friend VertexSet operator-(VertexSet a, const VertexSet& b) { return a -= b; }
    friend bool operator==(const VertexSet& a, const VertexSet& b) = default;

    const_iterator begin() const { return {words_.data(), words_.size(), 0}; }
    const_iterator end() const { return {words_.data(), words_.size(), words_.size()}; }

private:
    void check_same_universe(const VertexSet& other) const;

    std::size_t universe_ = 0;
    std::vector<std::uint64_t> words_;
};

} // namespace qk

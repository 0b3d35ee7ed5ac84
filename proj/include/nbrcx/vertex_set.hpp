#ifndef NBRCX_VERTEX_SET_HPP
#define NBRCX_VERTEX_SET_HPP

#include <bit>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace nbrcx {

using Vertex = std::uint32_t;

/**
 * Fixed-universe bitmask over vertices 0..universe-1. This is the canonical
 * internal form for vertex sets; sorted vertex lists convert in and out.
 */
class VertexSet {
public:
    VertexSet() = default;
    explicit VertexSet(std::size_t universe) : universe_(universe), words_((universe + 63) / 64, 0) {}

    static VertexSet full(std::size_t universe)
    {
        VertexSet s(universe);
        for (std::size_t i = 0; i < universe; ++i) s.insert(static_cast<Vertex>(i));
        return s;
    }

    static VertexSet from_list(std::size_t universe, std::span<const Vertex> vertices)
    {
        VertexSet s(universe);
        for (Vertex v : vertices) s.insert(v);
        return s;
    }

    std::size_t universe() const noexcept { return universe_; }
    std::size_t word_count() const noexcept { return words_.size(); }
    std::span<const std::uint64_t> words() const noexcept { return words_; }
    std::span<std::uint64_t> words() noexcept { return words_; }

    bool contains(Vertex v) const noexcept { return (words_[v >> 6] >> (v & 63)) & 1ULL; }
    void insert(Vertex v) noexcept { words_[v >> 6] |= (1ULL << (v & 63)); }
    void erase(Vertex v) noexcept { words_[v >> 6] &= ~(1ULL << (v & 63)); }

    std::size_t count() const noexcept
    {
        std::size_t c = 0;
        for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
        return c;
    }

    bool empty() const noexcept
    {
        for (auto w : words_)
            if (w) return false;
        return true;
    }

    VertexSet& operator&=(const VertexSet& other) noexcept
    {
        for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= other.words_[i];
        return *this;
    }

    VertexSet& operator|=(const VertexSet& other) noexcept
    {
        for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= other.words_[i];
        return *this;
    }

    /** Removes every member of other. */
    VertexSet& subtract(const VertexSet& other) noexcept
    {
        for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= ~other.words_[i];
        return *this;
    }

    friend VertexSet operator&(VertexSet a, const VertexSet& b) noexcept { return a &= b; }
    friend bool operator==(const VertexSet&, const VertexSet&) = default;

    /** |this & other| without materializing the intersection. */
    std::size_t and_count(const VertexSet& other) const noexcept
    {
        std::size_t c = 0;
        for (std::size_t i = 0; i < words_.size(); ++i)
            c += static_cast<std::size_t>(std::popcount(words_[i] & other.words_[i]));
        return c;
    }

    bool is_subset_of(const VertexSet& other) const noexcept
    {
        for (std::size_t i = 0; i < words_.size(); ++i)
            if (words_[i] & ~other.words_[i]) return false;
        return true;
    }

    /** Calls fn(v) for each member in increasing order. */
    template <typename Fn>
    void for_each(Fn&& fn) const
    {
        for (std::size_t i = 0; i < words_.size(); ++i) {
            std::uint64_t w = words_[i];
            while (w) {
                const int bit = std::countr_zero(w);
                fn(static_cast<Vertex>(i * 64 + static_cast<std::size_t>(bit)));
                w &= w - 1;
            }
        }
    }

    std::vector<Vertex> to_list() const
    {
        std::vector<Vertex> out;
        out.reserve(count());
        for_each([&](Vertex v) { out.push_back(v); });
        return out;
    }

private:
    std::size_t universe_ = 0;
    std::vector<std::uint64_t> words_;
};

}  // namespace nbrcx

#endif

#pragma once

#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <iosfwd>
#include <span>
#include <vector>

namespace pretopo {

/**
 * A subset of a finite universe {0, ..., n-1}, stored as a packed bitset.
 *
 * Binary operations require both operands to share the same universe size;
 * mixing sizes raises ContractViolation. Equality is extensional.
 */
class ElementSet {
public:
    using Word = std::uint64_t;
    static constexpr std::size_t bits_per_word = 64;

    ElementSet() = default;
    explicit ElementSet(std::size_t universe_size);
    ElementSet(std::size_t universe_size, std::initializer_list<std::size_t> members);
    ElementSet(std::size_t universe_size, std::span<const std::size_t> members);

    static ElementSet full(std::size_t universe_size);
    // Bits of `mask` become members; requires universe_size <= 64.
    static ElementSet from_mask(std::size_t universe_size, std::uint64_t mask);

    std::size_t universe_size() const noexcept { return n_; }
    std::size_t size() const noexcept;
    bool empty() const noexcept;

    bool contains(std::size_t x) const;
    void insert(std::size_t x);
    void erase(std::size_t x);

    bool intersects(const ElementSet& other) const;
    bool is_subset_of(const ElementSet& other) const;
    std::size_t intersection_size(const ElementSet& other) const;

    ElementSet& operator|=(const ElementSet& other);
    ElementSet& operator&=(const ElementSet& other);
    ElementSet& operator-=(const ElementSet& other);
    ElementSet complement() const;

    std::uint64_t to_mask() const;
    std::vector<std::size_t> members() const;
    std::span<const Word> words() const noexcept { return words_; }

    // Calls f(x) for each member in increasing order.
    template <class F>
    void for_each(F&& f) const
    {
        for (std::size_t w = 0; w < words_.size(); ++w) {
            Word bits = words_[w];
            while (bits) {
                const auto bit = static_cast<std::size_t>(std::countr_zero(bits));
                f(w * bits_per_word + bit);
                bits &= bits - 1;
            }
        }
    }

    friend bool operator==(const ElementSet&, const ElementSet&) = default;

    friend ElementSet operator|(ElementSet a, const ElementSet& b) { return a |= b; }
    friend ElementSet operator&(ElementSet a, const ElementSet& b) { return a &= b; }
    friend ElementSet operator-(ElementSet a, const ElementSet& b) { return a -= b; }

    std::size_t hash() const noexcept;

private:
    void check_index(std::size_t x) const;
    void check_same_universe(const ElementSet& other) const;

    std::size_t n_ = 0;
    std::vector<Word> words_;
};

// Canonical order: cardinality ascending, then lexicographic on the
// ascending member lists.
bool canonical_less(const ElementSet& a, const ElementSet& b);

struct CanonicalLess {
    bool operator()(const ElementSet& a, const ElementSet& b) const { return canonical_less(a, b); }
};

std::ostream& operator<<(std::ostream& os, const ElementSet& s);

} // namespace pretopo

template <>
struct std::hash<pretopo::ElementSet> {
    std::size_t operator()(const pretopo::ElementSet& s) const noexcept { return s.hash(); }
};

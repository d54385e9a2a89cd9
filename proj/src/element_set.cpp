#include "pretopo/element_set.hpp"

#include "pretopo/errors.hpp"

#include <algorithm>
#include <ostream>
#include <string>

namespace pretopo {

namespace {

std::size_t word_count(std::size_t n) { return (n + ElementSet::bits_per_word - 1) / ElementSet::bits_per_word; }

ElementSet::Word tail_mask(std::size_t n)
{
    const std::size_t rem = n % ElementSet::bits_per_word;
    return rem == 0 ? ~ElementSet::Word{0} : ((ElementSet::Word{1} << rem) - 1);
}

} // namespace

ElementSet::ElementSet(std::size_t universe_size) : n_(universe_size), words_(word_count(universe_size), 0) {}

ElementSet::ElementSet(std::size_t universe_size, std::initializer_list<std::size_t> members)
    : ElementSet(universe_size)
{
    for (auto x : members)
        insert(x);
}

ElementSet::ElementSet(std::size_t universe_size, std::span<const std::size_t> members) : ElementSet(universe_size)
{
    for (auto x : members)
        insert(x);
}

ElementSet ElementSet::full(std::size_t universe_size)
{
    ElementSet s(universe_size);
    std::fill(s.words_.begin(), s.words_.end(), ~Word{0});
    if (!s.words_.empty())
        s.words_.back() &= tail_mask(universe_size);
    return s;
}

ElementSet ElementSet::from_mask(std::size_t universe_size, std::uint64_t mask)
{
    if (universe_size > bits_per_word)
        throw ContractViolation("from_mask: universe larger than 64 items");
    ElementSet s(universe_size);
    const auto valid = s.words_.empty() ? std::uint64_t{0} : tail_mask(universe_size);
    if (mask & ~valid)
        throw ContractViolation("from_mask: bit set beyond the universe");
    if (!s.words_.empty())
        s.words_[0] = mask;
    return s;
}

std::size_t ElementSet::size() const noexcept
{
    std::size_t total = 0;
    for (auto w : words_)
        total += static_cast<std::size_t>(std::popcount(w));
    return total;
}

bool ElementSet::empty() const noexcept
{
    return std::all_of(words_.begin(), words_.end(), [](Word w) { return w == 0; });
}

void ElementSet::check_index(std::size_t x) const
{
    if (x >= n_)
        throw ContractViolation("item index " + std::to_string(x) + " out of range for universe of size " +
                                std::to_string(n_));
}

void ElementSet::check_same_universe(const ElementSet& other) const
{
    if (n_ != other.n_)
        throw ContractViolation("element sets over different universes (" + std::to_string(n_) + " vs " +
                                std::to_string(other.n_) + ")");
}

bool ElementSet::contains(std::size_t x) const
{
    check_index(x);
    return (words_[x / bits_per_word] >> (x % bits_per_word)) & 1U;
}

void ElementSet::insert(std::size_t x)
{
    check_index(x);
    words_[x / bits_per_word] |= Word{1} << (x % bits_per_word);
}

void ElementSet::erase(std::size_t x)
{
    check_index(x);
    words_[x / bits_per_word] &= ~(Word{1} << (x % bits_per_word));
}

bool ElementSet::intersects(const ElementSet& other) const
{
    check_same_universe(other);
    for (std::size_t i = 0; i < words_.size(); ++i)
        if (words_[i] & other.words_[i])
            return true;
    return false;
}

bool ElementSet::is_subset_of(const ElementSet& other) const
{
    check_same_universe(other);
    for (std::size_t i = 0; i < words_.size(); ++i)
        if (words_[i] & ~other.words_[i])
            return false;
    return true;
}

std::size_t ElementSet::intersection_size(const ElementSet& other) const
{
    check_same_universe(other);
    std::size_t total = 0;
    for (std::size_t i = 0; i < words_.size(); ++i)
        total += static_cast<std::size_t>(std::popcount(words_[i] & other.words_[i]));
    return total;
}

ElementSet& ElementSet::operator|=(const ElementSet& other)
{
    check_same_universe(other);
    for (std::size_t i = 0; i < words_.size(); ++i)
        words_[i] |= other.words_[i];
    return *this;
}

ElementSet& ElementSet::operator&=(const ElementSet& other)
{
    check_same_universe(other);
    for (std::size_t i = 0; i < words_.size(); ++i)
        words_[i] &= other.words_[i];
    return *this;
}

ElementSet& ElementSet::operator-=(const ElementSet& other)
{
    check_same_universe(other);
    for (std::size_t i = 0; i < words_.size(); ++i)
        words_[i] &= ~other.words_[i];
    return *this;
}

ElementSet ElementSet::complement() const
{
    ElementSet c(n_);
    for (std::size_t i = 0; i < words_.size(); ++i)
        c.words_[i] = ~words_[i];
    if (!c.words_.empty())
        c.words_.back() &= tail_mask(n_);
    return c;
}

std::uint64_t ElementSet::to_mask() const
{
    if (n_ > bits_per_word)
        throw ContractViolation("to_mask: universe larger than 64 items");
    return words_.empty() ? 0 : words_[0];
}

std::vector<std::size_t> ElementSet::members() const
{
    std::vector<std::size_t> out;
    out.reserve(size());
    for_each([&](std::size_t x) { out.push_back(x); });
    return out;
}

std::size_t ElementSet::hash() const noexcept
{
    // splitmix-style mixing per word
    std::uint64_t h = 0x9e3779b97f4a7c15ULL ^ n_;
    for (auto w : words_) {
        std::uint64_t z = w + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        h ^= z ^ (z >> 31);
    }
    return static_cast<std::size_t>(h);
}

bool canonical_less(const ElementSet& a, const ElementSet& b)
{
    const auto sa = a.size();
    const auto sb = b.size();
    if (sa != sb)
        return sa < sb;
    // Same cardinality: the set whose first differing member is smaller
    // sorts first. That member is the lowest bit of the XOR, and it is
    // present in exactly one of the two sets.
    const auto wa = a.words();
    const auto wb = b.words();
    const std::size_t n = std::min(wa.size(), wb.size());
    for (std::size_t i = 0; i < n; ++i) {
        const auto diff = wa[i] ^ wb[i];
        if (diff) {
            const auto low = diff & (~diff + 1);
            return (wa[i] & low) != 0;
        }
    }
    return a.universe_size() < b.universe_size();
}

std::ostream& operator<<(std::ostream& os, const ElementSet& s)
{
    os << '{';
    bool first = true;
    s.for_each([&](std::size_t x) {
        if (!first)
            os << ',';
        os << x;
        first = false;
    });
    return os << '}';
}

} // namespace pretopo

#pragma once

#include "oagkit/rational.hpp"
#include "oagkit/verdict.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace oagkit {

/// Class of the index |R/pR|.
enum class IndexClass { One, P, Finite, Inf };

struct DivIndex {
    IndexClass cls = IndexClass::One;
    std::int64_t value = 1;  // Finite only
};

/// Realizable elements of a rib. ZStar is a nonstandard Presburger model
/// Z + Q*F, F divisible by every integer.
enum class DomainKind { Int, Rat, CoprimeTo, ZStar };

struct RibSpec {
    bool discrete = true;
    std::map<std::int64_t, DivIndex> div;  // unlisted primes: p for discrete ribs, 1 otherwise
    bool cut_complete = true;
    DomainKind domain = DomainKind::Int;
    std::vector<std::int64_t> primes;  // CoprimeTo
    std::string label;

    static RibSpec integers();
    static RibSpec rationals();
    static RibSpec reals();  // cut-complete divisible rib, realized by Q
    static RibSpec localized(std::int64_t p);  // Z_(p): dense, |R/pR| = p, cut-complete
    static RibSpec nonstandard_integers();

    DivIndex index(std::int64_t p) const;
    /// Profile-level m-divisibility of the whole rib.
    bool divisible_by(std::int64_t m) const;
    std::string name() const;
};

using RibElement = Coord;

bool in_domain(const RibSpec& r, const RibElement& a);
RibElement rib_add(const RibSpec& r, const RibElement& a, const RibElement& b);
/// The witness b with a = m*b, if one exists in the element domain.
std::optional<RibElement> rib_divisible(const RibSpec& r, const RibElement& a, std::int64_t m);
bool rib_elem_equiv(const RibSpec& a, const RibSpec& b);
Verdict rib_stably_embedded(const RibSpec& r);
std::optional<RibElement> rib_min_positive(const RibSpec& r);
/// Z and the cut-complete divisible rib.
bool rib_uniformly_stably_embedded(const RibSpec& r);

bool same_rib(const RibSpec& a, const RibSpec& b);

}  // namespace oagkit

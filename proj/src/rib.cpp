#include "oagkit/rib.hpp"

#include <set>
#include <stdexcept>

namespace oagkit {

RibSpec RibSpec::integers() { return {true, {}, true, DomainKind::Int, {}, "Z"}; }
RibSpec RibSpec::rationals() { return {false, {}, false, DomainKind::Rat, {}, "Q"}; }
RibSpec RibSpec::reals() { return {false, {}, true, DomainKind::Rat, {}, "R"}; }
RibSpec RibSpec::localized(std::int64_t p) {
    return {false, {{p, {IndexClass::P, p}}}, true, DomainKind::CoprimeTo, {p}, "Z(" + std::to_string(p) + ")"};
}
RibSpec RibSpec::nonstandard_integers() { return {true, {}, false, DomainKind::ZStar, {}, "Z*"}; }

DivIndex RibSpec::index(std::int64_t p) const {
    if (discrete) return {IndexClass::P, p};
    auto it = div.find(p);
    return it == div.end() ? DivIndex{} : it->second;
}

bool RibSpec::divisible_by(std::int64_t m) const {
    if (m <= 0) throw std::invalid_argument("modulus must be positive");
    for (auto p : prime_factors(m))
        if (index(p).cls != IndexClass::One) return false;
    return true;
}

std::string RibSpec::name() const {
    if (!label.empty()) return label;
    std::string s = discrete ? "discrete" : "dense";
    for (const auto& [p, d] : div) {
        if (d.cls == IndexClass::One) continue;
        s += " |R/" + std::to_string(p) + "R|=";
        s += d.cls == IndexClass::Inf ? "inf" : std::to_string(d.cls == IndexClass::P ? p : d.value);
    }
    if (cut_complete) s += " complete";
    return s;
}

bool in_domain(const RibSpec& r, const RibElement& a) {
    switch (r.domain) {
        case DomainKind::Int: return a.standard() && is_integer(a.fin);
        case DomainKind::Rat: return a.standard();
        case DomainKind::CoprimeTo: return a.standard() && denominator_coprime_to(a.fin, r.primes);
        case DomainKind::ZStar: return is_integer(a.fin);
    }
    return false;
}

RibElement rib_add(const RibSpec& r, const RibElement& a, const RibElement& b) {
    if (!in_domain(r, a) || !in_domain(r, b)) throw std::domain_error("rib element outside " + r.name());
    return a + b;
}

std::optional<RibElement> rib_divisible(const RibSpec& r, const RibElement& a, std::int64_t m) {
    if (m < 1) throw std::invalid_argument("modulus must be >= 1");
    RibElement b = a.divided(Rational(static_cast<long>(m)));
    if (in_domain(r, b)) return b;
    return std::nullopt;
}

namespace {
std::int64_t index_value(const DivIndex& d, std::int64_t p) {
    switch (d.cls) {
        case IndexClass::One: return 1;
        case IndexClass::P: return p;
        case IndexClass::Finite: return d.value;
        case IndexClass::Inf: return 0;
    }
    return 1;
}
}  // namespace

bool rib_elem_equiv(const RibSpec& a, const RibSpec& b) {
    if (a.discrete || b.discrete) return a.discrete == b.discrete;
    std::set<std::int64_t> primes;
    for (const auto& [p, d] : a.div) primes.insert(p);
    for (const auto& [p, d] : b.div) primes.insert(p);
    for (auto p : primes)
        if (index_value(a.index(p), p) != index_value(b.index(p), p)) return false;
    return true;
}

Verdict rib_stably_embedded(const RibSpec& r) {
    Verdict v;
    if (r.discrete && r.cut_complete) {
        v.status = Status::StablyEmbedded;
        v.add("rib", r.name() + " is Z, every cut is (g/n)^+ or (g/n)^-");
    } else if (r.discrete) {
        v.status = Status::NotStablyEmbedded;
        v.add("rib", r.name() + " is a nonstandard model of Presburger arithmetic; the cut above Z is not definable",
              Json{{"rib", r.name()}, {"cut", "standard part"}});
    } else if (r.cut_complete) {
        v.status = Status::StablyEmbedded;
        v.add("rib", r.name() + " is archimedean with divisible hull R");
    } else {
        v.status = Status::NotStablyEmbedded;
        v.add("rib", r.name() + " has divisible hull not isomorphic to R; an irrational cut is not definable",
              Json{{"rib", r.name()}, {"cut", "irrational"}});
    }
    return v;
}

std::optional<RibElement> rib_min_positive(const RibSpec& r) {
    if (r.discrete) return RibElement(Rational(1));
    return std::nullopt;
}

bool rib_uniformly_stably_embedded(const RibSpec& r) {
    if (r.discrete) return r.cut_complete;
    if (!r.cut_complete) return false;
    for (const auto& [p, d] : r.div)
        if (d.cls != IndexClass::One) return false;
    return true;
}

bool same_rib(const RibSpec& a, const RibSpec& b) {
    if (a.discrete != b.discrete || a.cut_complete != b.cut_complete || a.domain != b.domain || a.primes != b.primes)
        return false;
    return rib_elem_equiv(a, b);
}

}  // namespace oagkit

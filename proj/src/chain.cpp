#include "oagkit/chain.hpp"

#include "oagkit/json_io.hpp"

#include <algorithm>
#include <map>

namespace oagkit {

bool Segment::has_min() const { return (kind == SegKind::Fin && size > 0) || kind == SegKind::Omega; }
bool Segment::has_max() const { return (kind == SegKind::Fin && size > 0) || kind == SegKind::OmegaStar; }
bool Segment::discrete() const { return !dense(); }

const SegmentRule* ChainSpec::rule_on(const ColourRule& c, std::size_t seg) const {
    for (const auto& r : c.rules)
        if (r.seg == seg) return &r;
    return nullptr;
}

const char* to_string(SegKind k) {
    switch (k) {
        case SegKind::Fin: return "Fin";
        case SegKind::Omega: return "Omega";
        case SegKind::OmegaStar: return "OmegaStar";
        case SegKind::Int: return "Int";
        case SegKind::DenseQ: return "DenseQ";
        case SegKind::DenseComplete: return "DenseComplete";
    }
    return "?";
}

const char* to_string(CutKind k) {
    switch (k) {
        case CutKind::MinusInf: return "MinusInf";
        case CutKind::PlusInf: return "PlusInf";
        case CutKind::PrincipalPlus: return "PrincipalPlus";
        case CutKind::PrincipalMinus: return "PrincipalMinus";
        case CutKind::SegmentBoundary: return "SegmentBoundary";
        case CutKind::LimitOfSegment: return "LimitOfSegment";
        case CutKind::InteriorGap: return "InteriorGap";
    }
    return "?";
}

const char* to_string(Definability d) {
    switch (d) {
        case Definability::Definable: return "Definable";
        case Definability::NotDefinable: return "NotDefinable";
        case Definability::Unknown: return "Unknown";
    }
    return "?";
}

void validate(const ChainSpec& c) {
    if (c.segments.empty()) throw std::invalid_argument("chain has no segments");
    for (std::size_t i = 0; i < c.segments.size(); ++i) {
        const auto& s = c.segments[i];
        if (s.kind == SegKind::Fin && s.size < 0) throw std::invalid_argument("Fin size must be >= 0");
        if (s.kind == SegKind::Fin && s.size == 0 && c.segments.size() != 1)
            throw std::invalid_argument("Fin(0) is only allowed as the trivial chain");
    }
    for (const auto& col : c.colours)
        for (const auto& r : col.rules) {
            if (r.seg >= c.segments.size())
                throw std::invalid_argument("colour " + col.name + " references missing segment");
            if (r.kind == RuleKind::DenseCodense && c.segments[r.seg].kind != SegKind::DenseComplete)
                throw std::invalid_argument("DenseCodense rules live on DenseComplete segments");
            for (const auto& x : r.coords) validate(c, Position::at(r.seg, x));
        }
}

void validate(const ChainSpec& c, const Position& p) {
    if (p.inf) return;
    if (p.seg >= c.segments.size()) throw PositionOutOfDomain("segment index out of range");
    const auto& s = c.segments[p.seg];
    const bool integral = is_integer(p.coord);
    switch (s.kind) {
        case SegKind::Fin:
            if (!integral || sgn(p.coord) < 0 || p.coord >= s.size)
                throw PositionOutOfDomain("coordinate outside Fin(" + std::to_string(s.size) + ")");
            break;
        case SegKind::Omega:
        case SegKind::OmegaStar:
            if (!integral || sgn(p.coord) < 0) throw PositionOutOfDomain("coordinate must be a natural number");
            break;
        case SegKind::Int:
            if (!integral) throw PositionOutOfDomain("coordinate must be an integer");
            break;
        case SegKind::DenseQ:
        case SegKind::DenseComplete:
            break;
    }
}

std::strong_ordering compare_positions(const ChainSpec& c, const Position& a, const Position& b) {
    validate(c, a);
    validate(c, b);
    if (a.inf || b.inf) {
        if (a.inf && b.inf) return std::strong_ordering::equal;
        return a.inf ? std::strong_ordering::greater : std::strong_ordering::less;
    }
    if (a.seg != b.seg) return a.seg <=> b.seg;
    int r = cmp(a.coord, b.coord);
    if (c.segments[a.seg].kind == SegKind::OmegaStar) r = -r;
    return r < 0 ? std::strong_ordering::less : (r > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
}

bool in_colour(const ChainSpec& c, const ColourRule& colour, const Position& p) {
    if (p.inf) return colour.contains_top;
    const SegmentRule* r = c.rule_on(colour, p.seg);
    if (!r) return false;
    auto listed = std::find(r->coords.begin(), r->coords.end(), p.coord) != r->coords.end();
    switch (r->kind) {
        case RuleKind::None: return false;
        case RuleKind::All: return true;
        case RuleKind::FiniteSet: return listed;
        case RuleKind::CofiniteComplement: return !listed;
        case RuleKind::SchematicSingletons: return is_integer(p.coord) && sgn(p.coord) >= 0;
        // Element-bearing coordinates are rational, so they all sit in the rational class.
        case RuleKind::DenseCodense: return r->rational_class;
    }
    return false;
}

namespace {

RuleKind kind_on(const ChainSpec& c, const ColourRule& col, std::size_t seg) {
    const SegmentRule* r = c.rule_on(col, seg);
    if (!r) return RuleKind::None;
    if (r->kind == RuleKind::FiniteSet && r->coords.empty()) return RuleKind::None;
    if (r->kind == RuleKind::CofiniteComplement && r->coords.empty()) return RuleKind::All;
    return r->kind;
}

// Members of the colour are unbounded towards the open end of the segment.
bool members_unbounded(RuleKind k) {
    return k == RuleKind::All || k == RuleKind::CofiniteComplement || k == RuleKind::DenseCodense;
}
bool complement_unbounded(RuleKind k) {
    return k == RuleKind::None || k == RuleKind::FiniteSet || k == RuleKind::DenseCodense;
}

std::string seg_name(const Segment& s) {
    switch (s.kind) {
        case SegKind::Fin: return std::to_string(s.size);
        case SegKind::Omega: return "ω";
        case SegKind::OmegaStar: return "ω*";
        case SegKind::Int: return "Z";
        case SegKind::DenseQ: return "Q";
        case SegKind::DenseComplete: return "R";
    }
    return "?";
}

// A single colour separating the sides of the boundary after segment i.
std::optional<std::string> colour_separation(const ChainSpec& c, std::size_t i) {
    const std::size_t n = c.segments.size();
    for (const auto& col : c.colours) {
        bool schematic = false;
        for (const auto& r : col.rules) schematic |= r.kind == RuleKind::SchematicSingletons;
        if (schematic) continue;
        bool empty_right = true, all_right = true, empty_left = true, all_left = true;
        for (std::size_t s = 0; s < n; ++s) {
            RuleKind k = kind_on(c, col, s);
            bool empty = k == RuleKind::None;
            bool all = k == RuleKind::All;
            if (s > i) { empty_right &= empty; all_right &= all; }
            else { empty_left &= empty; all_left &= all; }
        }
        RuleKind left = kind_on(c, col, i);
        RuleKind right = kind_on(c, col, i + 1);
        const std::string& P = col.name;
        if (empty_right && members_unbounded(left))
            return "L = {x : exists y >= x, y != inf, " + P + "(y)}";
        if (all_right && complement_unbounded(left))
            return "R = {x : forall y (x <= y < inf -> " + P + "(y))}";
        if (empty_left && members_unbounded(right))
            return "R = {x : exists y <= x, " + P + "(y)}";
        if (all_left && complement_unbounded(right))
            return "L = {x : forall y <= x, " + P + "(y)}";
    }
    return std::nullopt;
}

bool touched_by_dense_colour(const ChainSpec& c, std::size_t a, std::size_t b) {
    for (const auto& col : c.colours)
        for (std::size_t s : {a, b})
            if (kind_on(c, col, s) == RuleKind::DenseCodense) return true;
    return false;
}

Cut resolve(Cut cut, Definability d, std::string note) {
    cut.status = d;
    cut.note = std::move(note);
    return cut;
}

Cut classify_boundary(const ChainSpec& c, Cut cut, std::size_t i) {
    const std::size_t n = c.segments.size();
    if (i + 1 >= n) return resolve(cut, Definability::Definable, "principal: x < inf");
    const Segment& L = c.segments[i];
    const Segment& R = c.segments[i + 1];
    if (L.has_max()) return resolve(cut, Definability::Definable, "principal: x <= max of segment " + std::to_string(i));
    if (R.has_min()) return resolve(cut, Definability::Definable, "principal: x < min of segment " + std::to_string(i + 1));
    if (auto w = colour_separation(c, i)) return resolve(cut, Definability::Definable, "colour: " + *w);
    if (L.discrete() && R.dense())
        return resolve(cut, Definability::Definable,
                       "order type: L is the successor-closed run ending at the boundary (" + seg_name(L) + " against " +
                           seg_name(R) + ")");
    if (L.dense() && R.discrete())
        return resolve(cut, Definability::Definable,
                       "order type: R is the predecessor-closed run starting at the boundary (" + seg_name(L) +
                           " against " + seg_name(R) + ")");
    if (L.discrete() && R.discrete())
        return resolve(cut, Definability::NotDefinable,
                       "homogeneous discrete gap " + seg_name(L) + "+" + seg_name(R) +
                           ": no colour separates the sides and a formula names only finitely many schematic points");
    if (touched_by_dense_colour(c, i, i + 1))
        return resolve(cut, Definability::Unknown, "dense gap with dense-codense colours: outside the rule table");
    return resolve(cut, Definability::NotDefinable,
                   "dense gap " + seg_name(L) + "+" + seg_name(R) +
                       ": only finitely many named points, definable sets are finite unions of intervals");
}

}  // namespace

Cut classify_cut(const ChainSpec& c, Cut cut) {
    validate(c);
    const std::size_t n = c.segments.size();
    switch (cut.kind) {
        case CutKind::MinusInf: return resolve(cut, Definability::Definable, "L is empty");
        case CutKind::PlusInf: return resolve(cut, Definability::Definable, "R is empty");
        case CutKind::PrincipalPlus:
            validate(c, cut.pos);
            return resolve(cut, Definability::Definable, "principal: x <= p");
        case CutKind::PrincipalMinus:
            validate(c, cut.pos);
            return resolve(cut, Definability::Definable, "principal: x < p");
        case CutKind::SegmentBoundary:
            if (cut.seg >= n) throw std::invalid_argument("boundary index out of range");
            return classify_boundary(c, cut, cut.seg);
        case CutKind::LimitOfSegment: {
            if (cut.seg >= n) throw std::invalid_argument("segment index out of range");
            if (cut.side == Side::Top) return classify_boundary(c, cut, cut.seg);
            if (cut.seg == 0) return resolve(cut, Definability::Definable, "L is empty");
            return classify_boundary(c, cut, cut.seg - 1);
        }
        case CutKind::InteriorGap: {
            if (cut.seg >= n) throw std::invalid_argument("segment index out of range");
            const auto& s = c.segments[cut.seg];
            if (s.kind != SegKind::DenseQ)
                return resolve(cut, Definability::Definable, "segment has no non-principal interior cuts");
            if (touched_by_dense_colour(c, cut.seg, cut.seg))
                return resolve(cut, Definability::Unknown, "irrational cut under dense-codense colours");
            return resolve(cut, Definability::NotDefinable,
                           "irrational cut of a Q segment: definable sets have endpoints in the chain");
        }
    }
    return cut;
}

Verdict chain_stably_embedded(const ChainSpec& c) {
    validate(c);
    std::vector<Cut> cuts{Cut::minus_inf(), Cut::plus_inf()};
    if (!c.trivial()) {
        cuts.push_back(Cut::principal_plus(Position::at(0, 0)));
        for (std::size_t i = 0; i < c.segments.size(); ++i) {
            cuts.push_back(Cut::boundary(i));
            if (c.segments[i].kind == SegKind::DenseQ) cuts.push_back(Cut::interior_gap(i));
        }
    }
    Verdict v;
    bool unknown = false;
    std::optional<Cut> bad;
    for (auto& cut : cuts) {
        Cut r = classify_cut(c, cut);
        if (r.status == Definability::NotDefinable && !bad) bad = r;
        if (r.status == Definability::Unknown) {
            unknown = true;
            v.add("chain", "undecided cut " + describe(c, r) + ": " + r.note, to_json(r));
        }
    }
    if (bad) {
        v.status = Status::NotStablyEmbedded;
        v.reasons.clear();
        v.add("chain", "cut " + describe(c, *bad) + " is not definable: " + bad->note, to_json(*bad));
    } else if (unknown) {
        v.status = Status::Unknown;
    } else {
        v.status = Status::StablyEmbedded;
        v.add("chain", "every cut class of " + describe(c) + " is definable");
    }
    return v;
}

namespace {

void canonical_rules(ChainSpec& c) {
    for (auto& col : c.colours) {
        std::vector<SegmentRule> kept;
        for (auto r : col.rules) {
            std::sort(r.coords.begin(), r.coords.end());
            r.coords.erase(std::unique(r.coords.begin(), r.coords.end()), r.coords.end());
            const auto& s = c.segments[r.seg];
            if (s.kind == SegKind::Fin && (r.kind == RuleKind::FiniteSet || r.kind == RuleKind::CofiniteComplement)) {
                std::vector<Rational> members;
                for (std::int64_t k = 0; k < s.size; ++k) {
                    Rational q(static_cast<long>(k));
                    bool listed = std::binary_search(r.coords.begin(), r.coords.end(), q);
                    if (listed == (r.kind == RuleKind::FiniteSet)) members.push_back(q);
                }
                r.kind = RuleKind::FiniteSet;
                r.coords = members;
                if (static_cast<std::int64_t>(members.size()) == s.size) { r.kind = RuleKind::All; r.coords.clear(); }
            }
            if (r.kind == RuleKind::FiniteSet && r.coords.empty()) continue;
            if (r.kind == RuleKind::None) continue;
            if (r.kind == RuleKind::CofiniteComplement && r.coords.empty()) r.kind = RuleKind::All;
            kept.push_back(r);
        }
        std::sort(kept.begin(), kept.end(), [](const auto& a, const auto& b) { return a.seg < b.seg; });
        col.rules = kept;
    }
}

bool fusable(const ChainSpec& c, std::size_t seg) {
    for (const auto& col : c.colours)
        if (const auto* r = c.rule_on(col, seg))
            if (r->kind == RuleKind::SchematicSingletons || r->kind == RuleKind::DenseCodense) return false;
    return true;
}

}  // namespace

ChainSpec normalize(const ChainSpec& in) {
    ChainSpec c = in;
    // drop Fin(0)
    std::vector<Segment> segs;
    std::vector<long> remap(c.segments.size(), -1);
    for (std::size_t i = 0; i < c.segments.size(); ++i) {
        if (c.segments[i].kind == SegKind::Fin && c.segments[i].size == 0) continue;
        remap[i] = static_cast<long>(segs.size());
        segs.push_back(c.segments[i]);
    }
    if (segs.empty()) return ChainSpec{{Segment::fin(0)}, {}};
    for (auto& col : c.colours) {
        std::vector<SegmentRule> rules;
        for (auto r : col.rules)
            if (remap[r.seg] >= 0) { r.seg = static_cast<std::size_t>(remap[r.seg]); rules.push_back(r); }
        col.rules = rules;
    }
    c.segments = segs;
    canonical_rules(c);
    // fuse adjacent finite segments
    for (std::size_t i = 0; i + 1 < c.segments.size();) {
        auto& a = c.segments[i];
        auto& b = c.segments[i + 1];
        if (a.kind != SegKind::Fin || b.kind != SegKind::Fin || !fusable(c, i) || !fusable(c, i + 1)) { ++i; continue; }
        const Rational shift(static_cast<long>(a.size));
        for (auto& col : c.colours) {
            std::vector<Rational> members;
            std::vector<SegmentRule> rules;
            for (const auto& r : col.rules) {
                if (r.seg != i && r.seg != i + 1) {
                    auto rr = r;
                    if (rr.seg > i + 1) --rr.seg;
                    rules.push_back(rr);
                    continue;
                }
                const auto& seg = c.segments[r.seg];
                std::vector<Rational> mem = r.coords;
                if (r.kind == RuleKind::All) {
                    mem.clear();
                    for (std::int64_t k = 0; k < seg.size; ++k) mem.emplace_back(static_cast<long>(k));
                }
                for (auto& x : mem) members.push_back(r.seg == i ? x : x + shift);
            }
            if (!members.empty()) rules.push_back({i, RuleKind::FiniteSet, members});
            col.rules = rules;
        }
        a.size += b.size;
        c.segments.erase(c.segments.begin() + static_cast<long>(i) + 1);
        canonical_rules(c);
    }
    return c;
}

ChainSpec ordered_sum(const ChainSpec& a, const ChainSpec& b) {
    ChainSpec out;
    auto append = [&](const ChainSpec& part, bool last) {
        const std::size_t offset = out.segments.size();
        if (!part.trivial()) out.segments.insert(out.segments.end(), part.segments.begin(), part.segments.end());
        for (const auto& col : part.colours) {
            auto it = std::find_if(out.colours.begin(), out.colours.end(), [&](const auto& x) { return x.name == col.name; });
            if (it == out.colours.end()) {
                out.colours.push_back({col.name, {}, false});
                it = out.colours.end() - 1;
            }
            if (!part.trivial())
                for (auto r : col.rules) { r.seg += offset; it->rules.push_back(r); }
            if (last) it->contains_top = col.contains_top;
        }
    };
    append(a, false);
    append(b, true);
    if (out.segments.empty()) out.segments.push_back(Segment::fin(0));
    return out;
}

std::string describe(const ChainSpec& c) {
    std::string s;
    for (std::size_t i = 0; i < c.segments.size(); ++i) {
        if (i) s += "+";
        s += seg_name(c.segments[i]);
    }
    return s;
}

std::string describe(const ChainSpec& c, const Cut& cut) {
    std::string s = to_string(cut.kind);
    switch (cut.kind) {
        case CutKind::PrincipalPlus:
        case CutKind::PrincipalMinus: s += "(" + to_json(cut.pos).dump() + ")"; break;
        case CutKind::SegmentBoundary:
        case CutKind::InteriorGap: s += "(" + std::to_string(cut.seg) + ")"; break;
        case CutKind::LimitOfSegment:
            s += "(" + std::to_string(cut.seg) + (cut.side == Side::Top ? ",top)" : ",bottom)");
            break;
        default: break;
    }
    (void)c;
    return s;
}

}  // namespace oagkit

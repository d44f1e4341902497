#include "oagkit/verdict.hpp"

namespace oagkit {

const char* to_string(Status s) {
    switch (s) {
        case Status::StablyEmbedded: return "StablyEmbedded";
        case Status::UniformlyStablyEmbedded: return "UniformlyStablyEmbedded";
        case Status::NotStablyEmbedded: return "NotStablyEmbedded";
        case Status::Unknown: return "Unknown";
    }
    return "Unknown";
}

const char* to_string(CheckStatus s) {
    switch (s) {
        case CheckStatus::Holds: return "Holds";
        case CheckStatus::HoldsBounded: return "HoldsBounded";
        case CheckStatus::Fails: return "Fails";
        case CheckStatus::Unknown: return "Unknown";
    }
    return "Unknown";
}

namespace {
Json reasons_json(const std::vector<Reason>& rs) {
    Json out = Json::array();
    for (const auto& r : rs) {
        Json j{{"rule", r.rule}, {"detail", r.detail}};
        if (!r.witness.is_null()) j["witness"] = r.witness;
        out.push_back(j);
    }
    return out;
}
}  // namespace

Json to_json(const Verdict& v) { return Json{{"status", to_string(v.status)}, {"reasons", reasons_json(v.reasons)}}; }

Json to_json(const Check& c) {
    Json j{{"status", to_string(c.status)}, {"reasons", reasons_json(c.reasons)}};
    if (c.n) j["n"] = c.n;
    return j;
}

}  // namespace oagkit

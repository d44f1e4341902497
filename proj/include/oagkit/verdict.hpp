#pragma once

#include <json.hpp>

#include <string>
#include <vector>

namespace oagkit {

using Json = nlohmann::json;

enum class Status { StablyEmbedded, UniformlyStablyEmbedded, NotStablyEmbedded, Unknown };

/// Outcome of a semi-decidable property check such as (M) or (UR).
enum class CheckStatus { Holds, HoldsBounded, Fails, Unknown };

struct Reason {
    std::string rule;    // maximality | rib | spine | hypothesis | chain | ...
    std::string detail;
    Json witness;        // null when the rule needs none
};

struct Verdict {
    Status status = Status::Unknown;
    std::vector<Reason> reasons;

    bool stably_embedded() const {
        return status == Status::StablyEmbedded || status == Status::UniformlyStablyEmbedded;
    }
    Verdict& add(std::string rule, std::string detail, Json witness = nullptr) {
        reasons.push_back({std::move(rule), std::move(detail), std::move(witness)});
        return *this;
    }
};

struct Check {
    CheckStatus status = CheckStatus::Unknown;
    std::vector<Reason> reasons;
    long long n = 0;  // the modulus N for (UR); the failing m for (M)

    bool holds() const { return status == CheckStatus::Holds || status == CheckStatus::HoldsBounded; }
};

const char* to_string(Status s);
const char* to_string(CheckStatus s);
Json to_json(const Verdict& v);
Json to_json(const Check& c);

}  // namespace oagkit

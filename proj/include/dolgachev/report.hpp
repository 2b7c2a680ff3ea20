#pragma once

// Named pass/fail checks collected into a JSON report.

#include <chrono>
#include <functional>
#include <string>
#include <vector>

#include <json.hpp>

#include "dolgachev/errors.hpp"

namespace dolgachev {

struct CheckResult {
    std::string name;
    bool pass = false;
    nlohmann::json detail;  // null when there is nothing to add
    std::string witness;    // residual, point or error when the check fails
    double seconds = 0;
};

class Report {
public:
    // Runs body; an exception fails the check with its kind and message as witness.
    CheckResult& run(const std::string& name, const std::function<bool(CheckResult&)>& body) {
        CheckResult c;
        c.name = name;
        auto t0 = std::chrono::steady_clock::now();
        try {
            c.pass = body(c);
        } catch (const std::exception& e) {  // Error::what() starts with the kind
            c.pass = false;
            c.witness = e.what();
        }
        c.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        checks_.push_back(std::move(c));
        return checks_.back();
    }

    const std::vector<CheckResult>& checks() const { return checks_; }
    bool pass() const {
        for (auto& c : checks_)
            if (!c.pass) return false;
        return true;
    }

    // Timings make the output run-dependent, so they are opt-in.
    nlohmann::json to_json(bool timings = false) const {
        nlohmann::json arr = nlohmann::json::array();
        for (auto& c : checks_) {
            nlohmann::json j{{"name", c.name}, {"status", c.pass ? "pass" : "fail"}};
            if (!c.detail.is_null()) j["detail"] = c.detail;
            if (!c.witness.empty()) j["witness"] = c.witness;
            if (timings) j["seconds"] = c.seconds;
            arr.push_back(std::move(j));
        }
        return arr;
    }

private:
    std::vector<CheckResult> checks_;
};

}  // namespace dolgachev

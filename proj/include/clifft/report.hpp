#pragma once

#include <algorithm>
#include <complex>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

namespace clifft {

using Json = nlohmann::json;

inline Json complex_json(std::complex<double> z) { return Json::array({z.real(), z.imag()}); }

struct CaseResult {
    std::string name;
    Json expected;
    Json got;
    double abs_error = 0.0;
    bool pass = false;
    std::string detail;
};

class Report {
public:
    Report() = default;
    explicit Report(std::string suite, Json config = Json::object())
        : suite_(std::move(suite)), config_(std::move(config)) {}

    const std::string& suite() const { return suite_; }
    const Json& config() const { return config_; }
    Json& config() { return config_; }
    const std::vector<CaseResult>& cases() const { return cases_; }

    void add(CaseResult c) { cases_.push_back(std::move(c)); }
    void append(const Report& other) {
        cases_.insert(cases_.end(), other.cases_.begin(), other.cases_.end());
    }

    bool pass() const {
        for (const auto& c : cases_)
            if (!c.pass) return false;
        return !cases_.empty();
    }

    std::size_t failures() const {
        std::size_t n = 0;
        for (const auto& c : cases_) n += c.pass ? 0 : 1;
        return n;
    }

    double max_abs_error() const {
        double e = 0.0;
        for (const auto& c : cases_) e = std::max(e, c.abs_error);
        return e;
    }

    const CaseResult* first_failure() const {
        for (const auto& c : cases_)
            if (!c.pass) return &c;
        return nullptr;
    }

    Json to_json() const {
        Json cases = Json::array();
        for (const auto& c : cases_) {
            Json j = {{"case", c.name},
                      {"expected", c.expected},
                      {"got", c.got},
                      {"abs_error", c.abs_error},
                      {"pass", c.pass}};
            if (!c.detail.empty()) j["detail"] = c.detail;
            cases.push_back(std::move(j));
        }
        return {{"suite", suite_}, {"config", config_}, {"pass", pass()}, {"cases", std::move(cases)}};
    }

private:
    std::string suite_;
    Json config_ = Json::object();
    std::vector<CaseResult> cases_;
};

}  // namespace clifft

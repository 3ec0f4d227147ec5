#pragma once

#include <json.hpp>

#include "qeuler/identity_lab.hpp"

namespace qeuler {

/// Report schema: {suite, grid, results: [{id, point, status, lhs?, rhs?}],
/// summary}. All values are exact strings or integers, never floating point.
inline nlohmann::ordered_json report_to_json(const SuiteReport& report) {
    nlohmann::ordered_json j;
    j["suite"] = report.suite;
    j["grid"] = {
        {"max_n", report.grid.max_n},
        {"max_r", report.grid.max_r},
        {"max_x", report.grid.max_x},
        {"h_min", report.grid.h_min},
        {"h_above_r", report.grid.h_above_r},
        {"max_m", report.grid.max_m},
        {"primes", report.grid.primes},
        {"levels", report.grid.levels},
        {"padic_max_n", report.grid.padic_max_n},
        {"padic_max_r", report.grid.padic_max_r},
        {"padic_prec", report.grid.padic_prec},
    };
    nlohmann::ordered_json results = nlohmann::ordered_json::array();
    for (const auto& chk : report.checks) {
        for (const auto& pr : chk.results) {
            nlohmann::ordered_json rec;
            rec["id"] = chk.id;
            nlohmann::ordered_json point = nlohmann::ordered_json::object();
            for (const auto& [key, value] : pr.point) point[key] = value;
            rec["point"] = point;
            switch (pr.status) {
                case PointStatus::pass: rec["status"] = "pass"; break;
                case PointStatus::fail: rec["status"] = "fail"; break;
                case PointStatus::skipped: rec["status"] = "skipped"; break;
            }
            if (pr.status == PointStatus::fail) {
                rec["lhs"] = pr.lhs;
                rec["rhs"] = pr.rhs;
            }
            if (pr.status == PointStatus::skipped) rec["reason"] = pr.reason;
            results.push_back(std::move(rec));
        }
    }
    j["results"] = std::move(results);
    nlohmann::ordered_json identities = nlohmann::ordered_json::array();
    for (const auto& chk : report.checks) {
        nlohmann::ordered_json rec;
        rec["id"] = chk.id;
        rec["backend"] = chk.backend;
        rec["description"] = chk.description;
        rec["pass"] = chk.passed();
        rec["fail"] = chk.failed();
        rec["skipped"] = chk.skipped();
        rec["documented"] = chk.documented;
        if (!chk.note.empty()) rec["note"] = chk.note;
        identities.push_back(std::move(rec));
    }
    j["summary"] = {
        {"identities", std::move(identities)},
        {"pass_rate", report.pass_rate
                          ? nlohmann::ordered_json(std::to_string(report.pass_rate->first) + "/" +
                                                   std::to_string(report.pass_rate->second))
                          : nlohmann::ordered_json("undefined")},
        {"documented_discrepancies", report.documented_discrepancies},
        {"undocumented_failures", report.undocumented_failures},
        {"total", {{"pass", report.total_pass},
                   {"fail", report.total_fail},
                   {"skipped", report.total_skipped}}},
    };
    return j;
}

} // namespace qeuler

#pragma once

#include <stdexcept>
#include <string>

namespace qeuler {

struct error : std::runtime_error {
    explicit error(const std::string& what) : std::runtime_error(what) {}
};

struct division_by_zero : error {
    explicit division_by_zero(const std::string& what = "division by zero") : error(what) {}
};

/// Too few correct p-adic digits remain to state a result.
struct precision_exhausted : error {
    explicit precision_exhausted(const std::string& what) : error(what) {}
};

struct pole_error : error {
    explicit pole_error(const std::string& what) : error(what) {}
};

struct budget_exceeded : error {
    explicit budget_exceeded(const std::string& what) : error(what) {}
};

struct divergent_series : error {
    explicit divergent_series(const std::string& what) : error(what) {}
};

struct parse_error : error {
    explicit parse_error(const std::string& what) : error(what) {}
};

struct domain_error : error {
    explicit domain_error(const std::string& what) : error(what) {}
};

} // namespace qeuler

#pragma once

#include <string>

#include "watson/lattice.hpp"
#include "watson/verify.hpp"

namespace watson {

inline constexpr const char* kSuiteVersion = "1.0";

/// Pretty-printed JSON documents. Key order is fixed, so identical inputs
/// give byte-identical text.
std::string to_json(const SuiteResult& suite);
std::string to_json(const RelationReport& report);
std::string to_json(const WatsonPoint& p, const EvalResult& r, unsigned digits);
std::string to_json(const ReductionPlan& plan, unsigned digits);

/// One row per sample; suites concatenate all relations under one header.
std::string to_csv(const SuiteResult& suite);
std::string to_csv(const RelationReport& report);

std::string to_text(const SuiteResult& suite);
std::string to_text(const RelationReport& report);
std::string to_text(const EvalResult& r, unsigned digits);
std::string to_text(const ReductionPlan& plan, unsigned digits);

}  // namespace watson

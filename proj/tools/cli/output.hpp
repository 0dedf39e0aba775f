#pragma once

#include <string>

#include "eisen/fourier.hpp"
#include "eisen_verify/suites.hpp"
#include "run_config.hpp"

namespace eisen::cli {

enum class Format { Json, Csv };

struct EvalRecord {
  EvalRequest request;
  SeriesValue value;
};

std::string render_evaluate(const RunConfig& cfg, const std::vector<EvalRecord>& records, Format format);
std::string render_fourier(const RunConfig& cfg, const FourierLine& line, std::optional<double> residual,
                           Format format);
std::string render_verify(const RunConfig& cfg, const std::vector<verify::SuiteResult>& suites, Format format);

}  // namespace eisen::cli

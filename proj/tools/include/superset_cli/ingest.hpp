#pragma once

#include <string>

#include "superset/data_model.hpp"

namespace superset::cli {

enum class LogBase { kNone, kNatural, kTen };

struct IngestOptions {
  std::string response;  // empty: auto-detect the diabetes schema
  LogBase log_base = LogBase::kNone;
};

struct IngestedData {
  Dataset dataset;
  std::string source;
  std::string schema;  // "diabetes" or "generic"
};

/// Header columns of the standard diabetes data file.
inline const std::vector<std::string> kDiabetesColumns = {"AGE", "SEX", "BMI", "BP", "S1", "S2",
                                                          "S3",  "S4",  "S5",  "S6", "Y"};

/// Parses tab- or comma-separated text with a header row. Every column other
/// than the response becomes a covariate.
IngestedData ingest_text(const std::string& text, const IngestOptions& options,
                         const std::string& source = "<memory>");

/// Reads `path` and parses it with ingest_text. Throws DataError on I/O failure.
IngestedData ingest(const std::string& path, const IngestOptions& options);

}  // namespace superset::cli

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pentagon/identities.hpp"

namespace pentagon {

// One persisted run: inputs, per-point reports, and environment stamp.
// Serialized as JSON; everything except the timestamp is deterministic for a
// fixed build and command line.
struct RunRecord {
  std::string schema_version = "1";
  std::string timestamp;  // UTC ISO-8601; excluded from determinism checks
  std::string command;
  std::string identity;  // empty when the run is not identity-scoped
  std::vector<std::uint64_t> seeds;
  double tolerance = 0.0;
  std::vector<VerificationReport> reports;
  std::vector<VariantResult> variants;  // populated by variant scans
  std::vector<std::string> notes;       // e.g. recorded as-printed failures
  std::string precision = "ieee-754 binary64";
  std::string build_id;
};

std::string current_utc_timestamp();
std::string build_identifier();

// JSON text of the record (stable field order, 2-space indent, trailing \n).
std::string run_record_to_json(const RunRecord& rec);
// Parses the fields report consumers need; throws ParseError on malformed
// input.
RunRecord run_record_from_json(const std::string& text);

// Flat table "seed,lhs_re,lhs_im,rhs_re,rhs_im,rel_residual" with one row per
// report, doubles in shortest round-trip form.
std::string reports_to_csv(const std::vector<VerificationReport>& reports);

// Aggregated one-line-per-identity summary of several records, e.g.
//   "s2s1-flavored: 20/20 passed, worst rel residual 3.2e-09".
std::string summarize_records(const std::vector<RunRecord>& records);

}  // namespace pentagon

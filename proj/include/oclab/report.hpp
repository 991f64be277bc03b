#pragma once

// Verification report records and their JSON / CSV / text renderings.
// Valuations are written as exact fractions ("a/b") or "inf".

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "oclab/arith.hpp"

namespace oclab {

enum class ClaimId {
  ThmA,
  PropSpecial,
  PropCongr,
  Identities21,
  CorUfF,
  LemmaUi,
  PropEsVsF,
  SerreConv,
  UmatrixGeneral,
  UmatrixStar,
};

std::string to_string(ClaimId id);
ClaimId parse_claim_id(const std::string& text);

struct RunParams {
  std::int64_t p = 0;
  std::optional<int> k;
  std::optional<std::size_t> M;
  std::optional<std::size_t> N;
  std::optional<std::size_t> i_max;

  friend bool operator==(const RunParams&, const RunParams&) = default;
};

struct ReportRow {
  std::string part;  // empty for single-series reports
  std::size_t i = 0;
  std::optional<std::size_t> j;
  PadicVal observed;
  PadicVal required;
  ExtRational margin;
  bool pass = false;

  friend bool operator==(const ReportRow&, const ReportRow&) = default;
};

// pass iff observed >= required (with inf >= inf).
ReportRow make_row(std::string part, std::size_t i, PadicVal observed, PadicVal required);

struct VerificationReport {
  ClaimId claim = ClaimId::ThmA;
  RunParams params;
  bool pass = true;
  std::vector<ReportRow> rows;
  std::map<std::string, std::string> derived;

  void add(ReportRow row);
  const ReportRow* first_failure() const;

  friend bool operator==(const VerificationReport&, const VerificationReport&) = default;
};

enum class Format { Json, Csv, Text };
Format parse_format(const std::string& text);

nlohmann::json to_json(const VerificationReport& r);
VerificationReport report_from_json(const nlohmann::json& j);

inline constexpr const char* kCsvHeader = "claim_id,p,k,i,observed,required,margin,status";

std::string render(const VerificationReport& r, Format format);
// JSON: array of reports; CSV: one header then all rows; text: tables in order.
std::string render(const std::vector<VerificationReport>& reports, Format format);

// Writes to `out` (a file path) or to stdout when empty. Throws IoError.
void write_output(const std::string& text, const std::string& out);
void emit_report(const VerificationReport& r, Format format, const std::string& out);

}  // namespace oclab

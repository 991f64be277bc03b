#include "oclab/report.hpp"

#include <array>
#include <fstream>
#include <iostream>
#include <sstream>

#include "oclab/errors.hpp"

namespace oclab {

namespace {

constexpr std::array<std::pair<ClaimId, const char*>, 10> kClaimNames{{
    {ClaimId::ThmA, "THM_A"},
    {ClaimId::PropSpecial, "PROP_SPECIAL"},
    {ClaimId::PropCongr, "PROP_CONGR"},
    {ClaimId::Identities21, "IDENTITIES_21"},
    {ClaimId::CorUfF, "COR_UF_F"},
    {ClaimId::LemmaUi, "LEMMA_UI"},
    {ClaimId::PropEsVsF, "PROP_ES_VS_F"},
    {ClaimId::SerreConv, "SERRE_CONV"},
    {ClaimId::UmatrixGeneral, "UMATRIX_GENERAL"},
    {ClaimId::UmatrixStar, "UMATRIX_STAR"},
}};

const char* status_word(bool pass) { return pass ? "pass" : "fail"; }

std::string row_key(const ReportRow& row) {
  std::string key = std::to_string(row.i);
  if (row.j) {
    key += ":" + std::to_string(*row.j);
  }
  if (!row.part.empty()) {
    key = row.part + "@" + key;
  }
  return key;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) {
    return s;
  }
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') {
      out += '"';
    }
    out += c;
  }
  return out + "\"";
}

void append_csv_rows(std::ostringstream& os, const VerificationReport& r) {
  const std::string k = r.params.k ? std::to_string(*r.params.k) : "";
  for (const auto& row : r.rows) {
    os << to_string(r.claim) << ',' << r.params.p << ',' << k << ',' << csv_field(row_key(row))
       << ',' << row.observed.to_string() << ',' << row.required.to_string() << ','
       << row.margin.to_string() << ',' << status_word(row.pass) << '\n';
  }
}

std::string params_line(const RunParams& p) {
  std::string s = "p=" + std::to_string(p.p);
  if (p.k) s += " k=" + std::to_string(*p.k);
  if (p.M) s += " M=" + std::to_string(*p.M);
  if (p.N) s += " N=" + std::to_string(*p.N);
  if (p.i_max) s += " i_max=" + std::to_string(*p.i_max);
  return s;
}

void append_text(std::ostringstream& os, const VerificationReport& r) {
  os << to_string(r.claim) << "  " << params_line(r.params) << "  "
     << (r.pass ? "PASS" : "FAIL") << '\n';
  std::vector<std::array<std::string, 6>> table;
  table.push_back({"part", "i", "observed", "required", "margin", "status"});
  for (const auto& row : r.rows) {
    std::string idx = std::to_string(row.i);
    if (row.j) {
      idx += "," + std::to_string(*row.j);
    }
    table.push_back({row.part.empty() ? "-" : row.part, idx, row.observed.to_string(),
                     row.required.to_string(), row.margin.to_string(), status_word(row.pass)});
  }
  std::array<std::size_t, 6> width{};
  for (const auto& line : table) {
    for (std::size_t c = 0; c < line.size(); ++c) {
      width[c] = std::max(width[c], line[c].size());
    }
  }
  for (const auto& line : table) {
    os << ' ';
    for (std::size_t c = 0; c < line.size(); ++c) {
      os << ' ' << line[c] << std::string(width[c] - line[c].size(), ' ');
    }
    os << '\n';
  }
  for (const auto& [key, value] : r.derived) {
    os << "  " << key << ": " << value << '\n';
  }
}

template <typename T>
std::optional<T> optional_field(const nlohmann::json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) {
    return std::nullopt;
  }
  return j.at(key).get<T>();
}

}  // namespace

std::string to_string(ClaimId id) {
  for (const auto& [claim, name] : kClaimNames) {
    if (claim == id) {
      return name;
    }
  }
  return "UNKNOWN";
}

ClaimId parse_claim_id(const std::string& text) {
  for (const auto& [claim, name] : kClaimNames) {
    if (text == name) {
      return claim;
    }
  }
  throw ParameterError("unknown claim id '" + text + "'");
}

ReportRow make_row(std::string part, std::size_t i, PadicVal observed, PadicVal required) {
  ReportRow row;
  row.part = std::move(part);
  row.i = i;
  row.margin = margin(observed, required);
  row.pass = !(observed < required);
  row.observed = std::move(observed);
  row.required = std::move(required);
  return row;
}

void VerificationReport::add(ReportRow row) {
  pass = pass && row.pass;
  rows.push_back(std::move(row));
}

const ReportRow* VerificationReport::first_failure() const {
  for (const auto& row : rows) {
    if (!row.pass) {
      return &row;
    }
  }
  return nullptr;
}

Format parse_format(const std::string& text) {
  if (text == "json") return Format::Json;
  if (text == "csv") return Format::Csv;
  if (text == "text") return Format::Text;
  throw ParameterError("unknown format '" + text + "' (json, csv, text)");
}

nlohmann::json to_json(const VerificationReport& r) {
  nlohmann::json params = {{"p", r.params.p}};
  if (r.params.k) params["k"] = *r.params.k;
  if (r.params.M) params["M"] = *r.params.M;
  if (r.params.N) params["N"] = *r.params.N;
  if (r.params.i_max) params["i_max"] = *r.params.i_max;

  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : r.rows) {
    nlohmann::json jr = {{"i", row.i},
                         {"observed", row.observed.to_string()},
                         {"required", row.required.to_string()},
                         {"margin", row.margin.to_string()},
                         {"status", status_word(row.pass)}};
    if (!row.part.empty()) jr["part"] = row.part;
    if (row.j) jr["j"] = *row.j;
    rows.push_back(std::move(jr));
  }
  return {{"claim_id", to_string(r.claim)},
          {"params", std::move(params)},
          {"status", status_word(r.pass)},
          {"rows", std::move(rows)},
          {"derived", r.derived}};
}

VerificationReport report_from_json(const nlohmann::json& j) {
  VerificationReport r;
  r.claim = parse_claim_id(j.at("claim_id").get<std::string>());
  const auto& params = j.at("params");
  r.params.p = params.at("p").get<std::int64_t>();
  r.params.k = optional_field<int>(params, "k");
  r.params.M = optional_field<std::size_t>(params, "M");
  r.params.N = optional_field<std::size_t>(params, "N");
  r.params.i_max = optional_field<std::size_t>(params, "i_max");
  r.pass = j.at("status").get<std::string>() == "pass";
  for (const auto& jr : j.at("rows")) {
    ReportRow row;
    row.part = jr.value("part", std::string());
    row.i = jr.at("i").get<std::size_t>();
    row.j = optional_field<std::size_t>(jr, "j");
    row.observed = PadicVal::parse(jr.at("observed").get<std::string>());
    row.required = PadicVal::parse(jr.at("required").get<std::string>());
    row.margin = ExtRational::parse(jr.at("margin").get<std::string>());
    row.pass = jr.at("status").get<std::string>() == "pass";
    r.rows.push_back(std::move(row));
  }
  if (j.contains("derived")) {
    r.derived = j.at("derived").get<std::map<std::string, std::string>>();
  }
  return r;
}

std::string render(const VerificationReport& r, Format format) {
  std::ostringstream os;
  switch (format) {
    case Format::Json:
      os << to_json(r).dump(2) << '\n';
      break;
    case Format::Csv:
      os << kCsvHeader << '\n';
      append_csv_rows(os, r);
      break;
    case Format::Text:
      append_text(os, r);
      break;
  }
  return os.str();
}

std::string render(const std::vector<VerificationReport>& reports, Format format) {
  std::ostringstream os;
  switch (format) {
    case Format::Json: {
      nlohmann::json all = nlohmann::json::array();
      for (const auto& r : reports) {
        all.push_back(to_json(r));
      }
      os << all.dump(2) << '\n';
      break;
    }
    case Format::Csv:
      os << kCsvHeader << '\n';
      for (const auto& r : reports) {
        append_csv_rows(os, r);
      }
      break;
    case Format::Text:
      for (const auto& r : reports) {
        append_text(os, r);
        os << '\n';
      }
      break;
  }
  return os.str();
}

void write_output(const std::string& text, const std::string& out) {
  if (out.empty()) {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream file(out, std::ios::binary | std::ios::trunc);
  if (!file) {
    throw IoError("cannot open '" + out + "' for writing");
  }
  file << text;
  if (!file) {
    throw IoError("write to '" + out + "' failed");
  }
}

void emit_report(const VerificationReport& r, Format format, const std::string& out) {
  write_output(render(r, format), out);
}

}  // namespace oclab

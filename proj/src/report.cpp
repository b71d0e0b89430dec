#include "pgdeg/report.hpp"

#include <fstream>
#include <sstream>

#include "pgdeg/error.hpp"

namespace pgdeg {

using nlohmann::json;

ReportFormat parse_format(const std::string& s) {
  if (s == "json") return ReportFormat::Json;
  if (s == "csv") return ReportFormat::Csv;
  if (s == "text") return ReportFormat::Text;
  throw InputError("unknown format '" + s + "' (expected json, csv or text)");
}

json to_json(const ExceptionalReport& r, bool with_timing) {
  json entries = json::array();
  for (const auto& e : r.entries)
    entries.push_back({{"subgroup", e.subgroup},
                       {"subgroup_order", e.subgroup_order},
                       {"quotient_order", e.quotient_order},
                       {"mu_quotient", e.mu_quotient},
                       {"distinguished", e.distinguished},
                       {"method", e.method}});
  json j = {{"group_id", r.group_id},
            {"prime", r.prime},
            {"order_exponent", r.order_exponent},
            {"mu", r.mu},
            {"status", r.status},
            {"exceptional", r.exceptional},
            {"distinguished", r.distinguished_count()},
            {"quotients", entries}};
  if (!r.error.empty()) j["error"] = r.error;
  if (with_timing) j["seconds"] = r.seconds;
  return j;
}

ExceptionalReport exceptional_from_json(const json& j) {
  ExceptionalReport r;
  r.group_id = j.at("group_id").get<std::string>();
  r.prime = j.at("prime").get<std::uint32_t>();
  r.order_exponent = j.at("order_exponent").get<std::uint32_t>();
  r.mu = j.at("mu").get<std::uint64_t>();
  r.status = j.at("status").get<std::string>();
  r.exceptional = j.at("exceptional").get<bool>();
  if (j.contains("error")) r.error = j.at("error").get<std::string>();
  if (j.contains("seconds")) r.seconds = j.at("seconds").get<double>();
  for (const auto& e : j.at("quotients")) {
    QuotientEntry q;
    q.subgroup = e.at("subgroup").get<std::vector<Exponents>>();
    q.subgroup_order = e.at("subgroup_order").get<std::uint64_t>();
    q.quotient_order = e.at("quotient_order").get<std::uint64_t>();
    q.mu_quotient = e.at("mu_quotient").get<std::uint64_t>();
    q.distinguished = e.at("distinguished").get<bool>();
    q.method = e.at("method").get<std::string>();
    r.entries.push_back(std::move(q));
  }
  return r;
}

json to_json(const ScanReport& r, bool with_timing) {
  json groups = json::array();
  for (const auto& g : r.per_group) groups.push_back(to_json(g, with_timing));
  json j = {{"corpus", r.corpus_id},
            {"prime", r.prime},
            {"order_exponent", r.order_exponent},
            {"total_groups", r.total_groups},
            {"scanned", r.scanned},
            {"exceptional_count", r.exceptional_count},
            {"failures", r.failures},
            {"partial", r.partial},
            {"engine_version", r.engine_version},
            {"manifest_hash", r.manifest_hash},
            {"groups", groups}};
  if (with_timing) j["seconds"] = r.seconds;
  return j;
}

namespace {

std::vector<Exponents> gens_as_exponents(const PcGroup& g, const Subgroup& h) {
  std::vector<Exponents> out;
  for (Elem x : h.gens) out.push_back(g.to_element(x).exps);
  return out;
}

std::string exps_text(const Exponents& e) {
  std::string s = "(";
  for (std::size_t i = 0; i < e.size(); ++i) s += (i ? " " : "") + std::to_string(e[i]);
  return s + ")";
}

std::string subgroup_text(const std::vector<Exponents>& gens) {
  if (gens.empty()) return "<1>";
  std::string s = "<";
  for (std::size_t i = 0; i < gens.size(); ++i) s += (i ? ", " : "") + exps_text(gens[i]);
  return s + ">";
}

std::string csv_row(const ExceptionalReport& r) {
  std::ostringstream out;
  out << r.group_id << ',' << r.status << ',';
  if (r.ok()) out << r.mu << ',' << r.entries.size() << ',' << r.distinguished_count();
  else out << ",,";
  out << ',' << (r.exceptional ? "yes" : "no") << '\n';
  return out.str();
}

constexpr const char* kCsvHeader = "group_id,status,mu,quotients,distinguished,exceptional\n";

std::string text_line(const ExceptionalReport& r) {
  std::ostringstream out;
  out << r.group_id << ": ";
  if (!r.ok()) {
    out << r.status;
    if (!r.error.empty()) out << " (" << r.error << ")";
  } else {
    out << "mu=" << r.mu << " quotients=" << r.entries.size() << " distinguished=" << r.distinguished_count()
        << (r.exceptional ? " exceptional" : "");
  }
  return out.str() + "\n";
}

}  // namespace

json to_json(const PcGroup& g, const MuCertificate& c) {
  json blocks = json::array();
  for (const auto& h : c.collection)
    blocks.push_back({{"generators", gens_as_exponents(g, h)}, {"order", h.order}, {"index", g.order() / h.order}});
  return {{"group", g.presentation().name()},
          {"prime", g.prime()},
          {"rank", g.rank()},
          {"mu", c.mu},
          {"blocks", blocks},
          {"permutations", c.perms}};
}

std::string render(const ScanReport& r, ReportFormat f, bool with_timing) {
  if (f == ReportFormat::Json) return to_json(r, with_timing).dump(2) + "\n";
  std::ostringstream out;
  const char* state = r.partial ? "partial" : "complete";
  if (f == ReportFormat::Csv) {
    out << kCsvHeader;
    for (const auto& g : r.per_group) out << csv_row(g);
    if (r.scanned > 0)
      out << "summary," << state << ",total=" << r.total_groups << ",scanned=" << r.scanned
          << ",exceptional=" << r.exceptional_count << ",failures=" << r.failures << '\n';
    return out.str();
  }
  for (const auto& g : r.per_group) out << text_line(g);
  out << "corpus " << r.corpus_id << " (p=" << r.prime << ", k=" << r.order_exponent << "): " << r.exceptional_count
      << " exceptional among " << r.scanned << " of " << r.total_groups << " groups, " << r.failures
      << " failures, " << state;
  if (with_timing) out << ", " << r.seconds << " s";
  out << '\n';
  return out.str();
}

std::string render(const ExceptionalReport& r, ReportFormat f, bool with_timing) {
  if (f == ReportFormat::Json) return to_json(r, with_timing).dump(2) + "\n";
  std::ostringstream out;
  if (f == ReportFormat::Csv) {
    out << "subgroup,subgroup_order,quotient_order,mu_quotient,distinguished,method\n";
    for (const auto& e : r.entries)
      out << '"' << subgroup_text(e.subgroup) << "\"," << e.subgroup_order << ',' << e.quotient_order << ','
          << e.mu_quotient << ',' << (e.distinguished ? "yes" : "no") << ',' << e.method << '\n';
    return out.str();
  }
  out << text_line(r);
  for (const auto& e : r.entries)
    out << "  N=" << subgroup_text(e.subgroup) << " |N|=" << e.subgroup_order << " mu(G/N)=" << e.mu_quotient
        << " [" << e.method << "]" << (e.distinguished ? " distinguished" : "") << '\n';
  if (with_timing) out << "  " << r.seconds << " s\n";
  return out.str();
}

std::string render(const PcGroup& g, const MuCertificate& c, ReportFormat f) {
  if (f == ReportFormat::Json) return to_json(g, c).dump(2) + "\n";
  std::ostringstream out;
  if (f == ReportFormat::Csv) {
    out << "block,subgroup,order,index\n";
    for (std::size_t b = 0; b < c.collection.size(); ++b)
      out << b + 1 << ",\"" << subgroup_text(gens_as_exponents(g, c.collection[b])) << "\","
          << c.collection[b].order << ',' << g.order() / c.collection[b].order << '\n';
    return out.str();
  }
  out << g.presentation().name() << ": degree " << c.mu << " with " << c.collection.size() << " coset block"
      << (c.collection.size() == 1 ? "" : "s") << '\n';
  for (std::size_t b = 0; b < c.collection.size(); ++b)
    out << "  block " << b + 1 << ": H=" << subgroup_text(gens_as_exponents(g, c.collection[b]))
        << " index " << g.order() / c.collection[b].order << '\n';
  for (std::size_t i = 0; i < c.perms.size(); ++i) {
    out << "  g" << i + 1 << " ->";
    for (auto x : c.perms[i]) out << ' ' << x;
    out << '\n';
  }
  return out.str();
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path.string());
  out << text;
  out.flush();
  if (!out) throw InputError("write failed for " + path.string());
}

}  // namespace pgdeg

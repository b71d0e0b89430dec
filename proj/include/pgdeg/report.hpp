#pragma once

// Serialisation of reports and certificates. Output is deterministic:
// wall-clock fields are written only when `with_timing` is set.

#include <filesystem>
#include <string>

#include "json.hpp"
#include "pgdeg/corpus.hpp"
#include "pgdeg/exceptional.hpp"
#include "pgdeg/mindeg.hpp"

namespace pgdeg {

enum class ReportFormat { Json, Csv, Text };

/// Throws InputError for names other than json, csv, text.
ReportFormat parse_format(const std::string& s);

nlohmann::json to_json(const ExceptionalReport& r, bool with_timing = false);
ExceptionalReport exceptional_from_json(const nlohmann::json& j);
nlohmann::json to_json(const ScanReport& r, bool with_timing = false);
nlohmann::json to_json(const PcGroup& g, const MuCertificate& c);

std::string render(const ScanReport& r, ReportFormat f, bool with_timing = false);
std::string render(const ExceptionalReport& r, ReportFormat f, bool with_timing = false);
std::string render(const PcGroup& g, const MuCertificate& c, ReportFormat f);

/// Writes `text` to `path`; throws InputError if the destination is unwritable.
void write_text(const std::filesystem::path& path, const std::string& text);

}  // namespace pgdeg

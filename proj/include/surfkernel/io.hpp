#pragma once

#include <json.hpp>
#include <string>
#include <vector>

#include "surfkernel/homology.hpp"
#include "surfkernel/pipeline.hpp"

namespace surfkernel {

/// One run, fully described by a JSON document.
struct JobConfig {
  FiniteGroup group;
  Signature signature;
  GeneratingVector vector;
  GluingStrategy strategy = GluingStrategy::sequential;
  bool audit = true;
  std::string input_sha256;
};

/// Throws ParseError (with the byte position for malformed JSON) on bad input.
JobConfig parse_job(const std::string& text);
JobConfig load_job(const std::string& path);

std::string sha256_hex(const std::string& data);

/// "json" etc. from a comma-separated list; throws ParseError on unknown names.
std::vector<std::string> parse_formats(const std::string& list);

std::string validation_text(const FiniteGroup& group, const Signature& sig, const ValidationReport& report,
                            const std::string& genus_line);

nlohmann::json presentation_json(const SchreierSystem& sys, const KernelPresentation& kp);
nlohmann::json reduced_json(const Analysis& analysis);
std::string audit_text(const AuditReport& audit);
std::string audit_csv(const AuditReport& audit);

/// "g00.txt", zero-padded to the width of n - 1.
std::string matrix_file_name(std::size_t index, std::size_t count);
nlohmann::json matrices_json(const std::vector<ActionMatrix>& rep);
nlohmann::json manifest_json(const std::vector<ActionMatrix>& rep, const std::string& input_sha256,
                             const std::vector<Check>& checks, const LefschetzReport& lefschetz);
std::string matrices_csv(const std::vector<ActionMatrix>& rep);

std::string report_text(const SchreierSystem& sys, const AdaptedBasisReport& report);
nlohmann::json report_json(const AdaptedBasisReport& report);
std::string report_csv(const AdaptedBasisReport& report);

/// Text for the block inventory only; used for golden comparison.
std::string inventory_text(const AdaptedBasisReport& report);

}  // namespace surfkernel

#include "surfkernel/io.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <map>
#include <sstream>

#include "surfkernel/errors.hpp"

namespace surfkernel {

using nlohmann::json;

namespace {

const json& require(const json& obj, const char* key, const std::string& where) {
  if (!obj.is_object() || !obj.contains(key)) throw ParseError(where + ": missing \"" + key + "\"");
  return obj.at(key);
}

std::vector<int> int_list(const json& j, const std::string& where) {
  if (!j.is_array()) throw ParseError(where + ": expected an array of integers");
  std::vector<int> out;
  for (const json& v : j) {
    if (!v.is_number_integer()) throw ParseError(where + ": expected an integer");
    out.push_back(v.get<int>());
  }
  return out;
}

GroupSpec parse_group(const json& g) {
  const std::string kind = require(g, "kind", "group").get<std::string>();
  if (kind == "abelian") return AbelianSpec{int_list(require(g, "invariants", "group"), "group.invariants")};
  if (kind == "table") {
    TableSpec spec;
    for (const json& row : require(g, "table", "group")) spec.table.push_back(int_list(row, "group.table"));
    return spec;
  }
  if (kind == "permutation") {
    PermutationSpec spec;
    spec.degree = require(g, "degree", "group").get<int>();
    for (const json& p : require(g, "generators", "group"))
      spec.generators.push_back(int_list(p, "group.generators"));
    if (g.contains("max_order")) spec.max_order = g.at("max_order").get<std::size_t>();
    return spec;
  }
  throw ParseError("group: unknown kind \"" + kind + "\"");
}

GroupElement parse_element(const FiniteGroup& group, const json& e, const std::string& where) {
  if (group.kind() == GroupKind::abelian) {
    std::vector<int> coords = e.is_number_integer() ? std::vector<int>{e.get<int>()} : int_list(e, where);
    const auto& inv = group.abelian_invariants();
    if (coords.size() != inv.size())
      throw ParseError(where + ": expected a tuple of length " + std::to_string(inv.size()));
    for (std::size_t i = 0; i < coords.size(); ++i)
      if (coords[i] < 0 || coords[i] >= inv[i]) throw ParseError(where + ": coordinate out of range");
    return group.abelian_element(coords);
  }
  if (!e.is_number_integer()) throw ParseError(where + ": expected an element index");
  const long long idx = e.get<long long>();
  if (idx < 0 || static_cast<std::size_t>(idx) >= group.order())
    throw ParseError(where + ": element " + std::to_string(idx) + " does not exist");
  return GroupElement{static_cast<std::uint32_t>(idx)};
}

std::vector<GroupElement> parse_elements(const FiniteGroup& group, const json& list, const std::string& where) {
  if (!list.is_array()) throw ParseError(where + ": expected an array");
  std::vector<GroupElement> out;
  for (std::size_t i = 0; i < list.size(); ++i)
    out.push_back(parse_element(group, list[i], where + "[" + std::to_string(i) + "]"));
  return out;
}

json word_json(const SchreierSystem& sys, const KernelWord& w) {
  json out = json::array();
  for (const KernelLetter& l : w) out.push_back(l.exponent > 0 ? sys.display(l.generator) : sys.display(l.generator) + "^-1");
  return out;
}

}  // namespace

JobConfig parse_job(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError("malformed JSON at byte " + std::to_string(e.byte) + ": " + e.what());
  }
  try {
    JobConfig job;
    job.input_sha256 = sha256_hex(text);
    job.group = build_group(parse_group(require(doc, "group", "input")));

    const json& sig = require(doc, "signature", "input");
    job.signature.orbit_genus = require(sig, "genus", "signature").get<int>();
    job.signature.periods = int_list(require(sig, "periods", "signature"), "signature.periods");
    if (job.signature.orbit_genus < 0) throw ParseError("signature.genus must be non-negative");
    for (int m : job.signature.periods)
      if (m < 2) throw ParseError("signature.periods must be >= 2");

    const json& vec = require(doc, "generating_vector", "input");
    job.vector.a = parse_elements(job.group, vec.value("a", json::array()), "generating_vector.a");
    job.vector.b = parse_elements(job.group, vec.value("b", json::array()), "generating_vector.b");
    job.vector.x = parse_elements(job.group, vec.value("x", json::array()), "generating_vector.x");

    if (doc.contains("options")) {
      const json& opt = doc.at("options");
      const std::string strategy = opt.value("strategy", "sequential");
      if (strategy == "sequential") job.strategy = GluingStrategy::sequential;
      else if (strategy == "cycles") job.strategy = GluingStrategy::cycles;
      else throw ParseError("options.strategy: unknown strategy \"" + strategy + "\"");
      job.audit = opt.value("audit", true);
    }
    return job;
  } catch (const json::exception& e) {
    throw ParseError(std::string("schema: ") + e.what());
  } catch (const ValidationError& e) {
    throw ParseError(std::string("group: ") + e.what());
  } catch (const SizeError& e) {
    throw ParseError(std::string("group: ") + e.what());
  }
}

JobConfig load_job(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_job(buf.str());
}

std::string sha256_hex(const std::string& data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr);
  std::ostringstream out;
  for (unsigned int i = 0; i < len; ++i) out << std::hex << std::setw(2) << std::setfill('0') << int(digest[i]);
  return out.str();
}

std::vector<std::string> parse_formats(const std::string& list) {
  std::vector<std::string> out;
  std::stringstream in(list);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (item.empty()) continue;
    if (item != "text" && item != "json" && item != "csv") throw ParseError("unknown format \"" + item + "\"");
    if (std::find(out.begin(), out.end(), item) == out.end()) out.push_back(item);
  }
  if (out.empty()) throw ParseError("no output format given");
  return out;
}

std::string validation_text(const FiniteGroup& group, const Signature& sig, const ValidationReport& report,
                            const std::string& genus_line) {
  std::ostringstream out;
  out << "group order " << group.order() << "\nsignature (" << sig.orbit_genus << ";";
  for (std::size_t i = 0; i < sig.periods.size(); ++i) out << (i ? "," : " ") << sig.periods[i];
  out << ")\n";
  for (const VectorCheck& c : report.checks) {
    out << (c.passed ? "pass " : "FAIL ") << c.name;
    if (!c.detail.empty()) out << ": " << c.detail;
    out << '\n';
  }
  out << genus_line << '\n';
  return out.str();
}

json presentation_json(const SchreierSystem& sys, const KernelPresentation& kp) {
  json out;
  const GeneratorCounts c = sys.counts();
  out["group_order"] = sys.size();
  json reps = json::array();
  for (std::size_t k = 0; k < sys.size(); ++k)
    reps.push_back({{"index", k}, {"word", sys.format_representative(k)}, {"element", sys.group().label(sys.element_of(k))}});
  out["representatives"] = reps;
  json gens = json::array();
  for (const SchreierGenerator& s : sys.generators())
    gens.push_back({{"id", s.id}, {"name", sys.display(s.id)}, {"class", std::string(1, class_code(s.cls))}});
  out["generators"] = gens;
  out["counts"] = {{"total", c.total()}, {"hyperbolic", c.hyperbolic}, {"elliptic", c.elliptic}, {"m", c.m}};
  json rels = json::array();
  for (const KernelRelation& r : kp.r_relations) rels.push_back({{"tag", r.tag}, {"word", word_json(sys, r.word)}});
  out["r_relations"] = rels;
  json erels = json::array();
  for (const EllipticRelation& e : kp.e_relations)
    erels.push_back({{"tag", e.relation.tag}, {"start", e.start_coset}, {"word", word_json(sys, e.relation.word)}});
  out["e_relations"] = erels;
  json ms = json::array();
  for (std::uint32_t m : kp.m_generators) ms.push_back(sys.display(m));
  out["m_generators"] = ms;
  out["relation_count"] = kp.relation_count();
  out["notes"] = kp.notes;
  return out;
}

json reduced_json(const Analysis& a) {
  const SchreierSystem& sys = *a.system;
  const ReducedPresentation& r = a.reduced;
  json out;
  out["genus"] = a.genus;
  json surv = json::array();
  for (std::uint32_t s : r.survivors) surv.push_back(sys.display(s));
  out["survivors"] = surv;
  out["final_relation"] = word_json(sys, r.final_relation);
  out["strategy"] = r.strategy == GluingStrategy::cycles ? "cycles" : "sequential";
  if (r.strategy == GluingStrategy::cycles) out["cycle_lengths"] = r.cycle_lengths;
  json ledger = json::array();
  for (const LedgerEntry& e : r.ledger.entries()) {
    json j = {{"order", e.order}, {"generator", sys.display(e.generator)}, {"kind", to_string(e.kind)}};
    if (e.kind != EliminationKind::m) {
      j["expression"] = word_json(sys, e.expression);
      j["source"] = e.source_tag;
    }
    ledger.push_back(j);
  }
  out["ledger"] = ledger;
  json snaps = json::array();
  for (const StageSnapshot& s : r.snapshots)
    snaps.push_back({{"stage", s.stage}, {"generators", s.generators}, {"relations", s.relations}});
  out["snapshots"] = snaps;
  out["normalization"] = a.normalization;
  out["log"] = r.log;
  return out;
}

std::string audit_text(const AuditReport& audit) {
  std::ostringstream out;
  for (const AuditLine& l : audit.lines) {
    out << std::left << std::setw(9) << l.stage << " generators " << l.generators << " (expected "
        << l.expected_generators << "), relations " << l.relations << " (expected " << l.expected_relations << ") "
        << (l.passed ? "ok" : "MISMATCH") << '\n';
  }
  std::string chain;
  for (const AuditLine& l : audit.lines) chain += (chain.empty() ? "" : " -> ") + std::to_string(l.generators);
  out << "generators: " << chain << '\n';
  for (const std::string& n : audit.notes) out << "note: " << n << '\n';
  return out.str();
}

std::string audit_csv(const AuditReport& audit) {
  std::ostringstream out;
  out << "stage,generators,expected_generators,relations,expected_relations,passed\n";
  for (const AuditLine& l : audit.lines)
    out << l.stage << ',' << l.generators << ',' << l.expected_generators << ',' << l.relations << ','
        << l.expected_relations << ',' << (l.passed ? 1 : 0) << '\n';
  return out.str();
}

std::string matrix_file_name(std::size_t index, std::size_t count) {
  std::size_t width = 1;
  for (std::size_t v = count > 0 ? count - 1 : 0; v >= 10; v /= 10) ++width;
  std::ostringstream out;
  out << 'g' << std::setw(static_cast<int>(width)) << std::setfill('0') << index << ".txt";
  return out.str();
}

json matrices_json(const std::vector<ActionMatrix>& rep) {
  json out = json::array();
  for (const ActionMatrix& a : rep) {
    json rows = json::array();
    for (std::size_t i = 0; i < a.matrix.rows(); ++i) {
      json row = json::array();
      for (std::size_t j = 0; j < a.matrix.cols(); ++j) row.push_back(a.matrix(i, j));
      rows.push_back(row);
    }
    out.push_back({{"element", a.element.index}, {"label", a.label}, {"matrix", rows}});
  }
  return out;
}

json manifest_json(const std::vector<ActionMatrix>& rep, const std::string& input_sha256,
                   const std::vector<Check>& checks, const LefschetzReport& lefschetz) {
  json out;
  out["input_sha256"] = input_sha256;
  out["dimension"] = rep.empty() ? 0 : rep[0].matrix.rows();
  json files = json::array();
  for (std::size_t i = 0; i < rep.size(); ++i)
    files.push_back({{"file", matrix_file_name(i, rep.size())}, {"element", rep[i].element.index}, {"label", rep[i].label}});
  out["files"] = files;
  json cs = json::array();
  for (const Check& c : checks) cs.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
  cs.push_back({{"name", "lefschetz"}, {"passed", lefschetz.ok()},
                {"detail", "trace sum " + std::to_string(lefschetz.trace_sum) + ", expected " +
                               std::to_string(lefschetz.expected_sum)}});
  out["checks"] = cs;
  json lines = json::array();
  for (const LefschetzLine& l : lefschetz.lines)
    lines.push_back({{"label", l.label}, {"trace", l.trace}, {"expected", l.expected}, {"fixed_points", l.fixed_points}});
  out["lefschetz"] = lines;
  return out;
}

std::string matrices_csv(const std::vector<ActionMatrix>& rep) {
  std::ostringstream out;
  out << "element,label,row,col,value\n";
  for (const ActionMatrix& a : rep)
    for (std::size_t i = 0; i < a.matrix.rows(); ++i)
      for (std::size_t j = 0; j < a.matrix.cols(); ++j)
        if (a.matrix(i, j) != 0)
          out << a.element.index << ",\"" << a.label << "\"," << i << ',' << j << ',' << a.matrix(i, j) << '\n';
  return out.str();
}

std::string inventory_text(const AdaptedBasisReport& report) {
  std::ostringstream out;
  for (const ElementInventory& inv : report.inventory) {
    std::map<std::size_t, std::size_t> supers, cycles;
    for (std::size_t s : inv.super_permutation_blocks) ++supers[s];
    for (std::size_t c : inv.permutation_cycles) ++cycles[c];
    out << inv.label << ':';
    for (auto it = supers.rbegin(); it != supers.rend(); ++it)
      out << " super" << it->first << "x" << it->first << "*" << it->second;
    for (auto it = cycles.rbegin(); it != cycles.rend(); ++it) out << " cycle" << it->first << "*" << it->second;
    out << " m_rows=" << inv.m_rows << '\n';
  }
  return out.str();
}

std::string report_text(const SchreierSystem&, const AdaptedBasisReport& report) {
  std::ostringstream out;
  out << "survivors " << report.survivors.size() << '\n';
  for (BasisItem item : {BasisItem::free_orbit, BasisItem::cyclic_block, BasisItem::translate,
                         BasisItem::fixed_by_subgroup, BasisItem::unclassified})
    out << "  " << to_string(item) << ' ' << report.count(item) << '\n';
  out << "\nclassification\n";
  for (const SurvivorClass& c : report.survivors) {
    out << "  " << c.name << ' ' << to_string(c.item);
    if (!c.detail.empty()) out << " (" << c.detail << ')';
    out << '\n';
  }
  out << "\ncyclic blocks " << report.blocks.size() << '\n';
  for (const CyclicBlock& b : report.blocks) {
    out << "  h=" << b.label << " m=" << b.order << ':';
    for (std::size_t k : b.members) out << ' ' << report.survivors.at(k).name;
    out << '\n';
  }
  out << "\nblock inventory\n" << inventory_text(report);
  out << "\nfixed spaces\n";
  for (const ElementInventory& inv : report.inventory)
    out << "  " << inv.label << " fixed_points=" << inv.fixed_points << " fixed_rank=" << inv.fixed_dimension << '\n';
  out << "\nnull-homologous generators removed " << report.removed.size() << '\n';
  for (const RemovedGenerator& r : report.removed) out << "  " << r.name << " = " << r.expansion << '\n';
  out << "\nchecks\n";
  for (const Check& c : report.checks) out << "  " << (c.passed ? "pass " : "FAIL ") << c.name << ": " << c.detail << '\n';
  out << "\nflags\n";
  for (const std::string& f : report.flags) out << "  " << f << '\n';
  return out.str();
}

json report_json(const AdaptedBasisReport& report) {
  json out;
  json surv = json::array();
  for (const SurvivorClass& c : report.survivors) {
    surv.push_back({{"generator", c.name}, {"item", to_string(c.item)}, {"detail", c.detail}});
  }
  out["survivors"] = surv;
  json blocks = json::array();
  for (const CyclicBlock& b : report.blocks) {
    json members = json::array();
    for (std::size_t k : b.members) members.push_back(report.survivors.at(k).name);
    blocks.push_back({{"h", b.label}, {"order", b.order}, {"members", members}});
  }
  out["cyclic_blocks"] = blocks;
  json inv = json::array();
  for (const ElementInventory& e : report.inventory)
    inv.push_back({{"label", e.label},
                   {"super_permutation_blocks", e.super_permutation_blocks},
                   {"permutation_cycles", e.permutation_cycles},
                   {"m_rows", e.m_rows},
                   {"fixed_rank", e.fixed_dimension},
                   {"fixed_points", e.fixed_points}});
  out["inventory"] = inv;
  json removed = json::array();
  for (const RemovedGenerator& r : report.removed) removed.push_back({{"generator", r.name}, {"expansion", r.expansion}});
  out["null_homologous"] = removed;
  json checks = json::array();
  for (const Check& c : report.checks) checks.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
  out["checks"] = checks;
  out["flags"] = report.flags;
  return out;
}

std::string report_csv(const AdaptedBasisReport& report) {
  std::ostringstream out;
  out << "generator,item,detail\n";
  for (const SurvivorClass& c : report.survivors)
    out << c.name << ',' << to_string(c.item) << ",\"" << c.detail << "\"\n";
  return out.str();
}

}  // namespace surfkernel

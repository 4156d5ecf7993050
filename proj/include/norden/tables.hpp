#pragma once

#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "norden/twin.hpp"

namespace norden {

enum class OutputFormat { Text, Csv, Structured };

inline OutputFormat parse_format(const std::string& s) {
  if (s == "text") return OutputFormat::Text;
  if (s == "csv") return OutputFormat::Csv;
  if (s == "structured") return OutputFormat::Structured;
  throw StructuralError("unknown output format '" + s + "' (text, csv, structured)");
}

struct TableRow {
  std::vector<int> index;  // 1-based; empty for scalar rows
  Polynomial value;
};

struct TableSection {
  std::string label;
  std::vector<TableRow> rows;
};

struct TableData {
  std::string name;
  std::vector<TableSection> sections;
};

namespace detail {

inline TableSection tensor_section(std::string label, const Tensor& t) {
  TableSection section{std::move(label), {}};
  std::vector<int> idx = t.start_index();
  if (t.rank() == 0) {
    section.rows.push_back({{}, t.at(std::span<const int>{})});
    return section;
  }
  do {
    section.rows.push_back({one_based(idx), t.at(idx)});
  } while (t.advance(idx));
  return section;
}

inline TableSection scalar_section(std::string label, const Polynomial& p) {
  TableSection section{std::move(label), {}};
  section.rows.push_back({{}, p});
  return section;
}

}  // namespace detail

inline const std::vector<std::string>& table_names() {
  static const std::vector<std::string> names{
      "nabla", "nabla-twin", "F",     "F-twin", "theta", "dtheta", "Phi", "R",
      "R-twin", "ricci",     "P",     "K",      "D",     "N",      "S",   "norms"};
  return names;
}

/// Builds one named component table from a context. Connection-like tables
/// list coefficients (i j k : coefficient of X_k in the image of X_j along
/// X_i); tensor tables list the lowered components in the role metric.
inline TableData make_table(const GeometryContext& ctx, const std::string& name) {
  const NordenObjects& o = ctx.objects;
  const NordenObjects& t = ctx.objects_twin;
  using detail::scalar_section;
  using detail::tensor_section;

  if (name == "nabla") return {name, {tensor_section("nabla", ctx.conn.coefficients())}};
  if (name == "nabla-twin")
    return {name, {tensor_section("nabla-twin", ctx.conn_twin.coefficients())}};
  if (name == "F") return {name, {tensor_section("F", o.F)}};
  if (name == "F-twin") return {name, {tensor_section("F-twin", t.F)}};
  if (name == "theta")
    return {name, {tensor_section("theta", o.theta), tensor_section("theta*", o.theta_star)}};
  if (name == "dtheta")
    return {name,
            {tensor_section("dtheta", o.dtheta), tensor_section("dtheta*", o.dtheta_star)}};
  if (name == "Phi")
    return {name,
            {tensor_section("Phi", o.phi03), tensor_section("f", o.f),
             tensor_section("f*", o.f_star)}};
  if (name == "R") return {name, {tensor_section("R", o.R04)}};
  if (name == "R-twin") return {name, {tensor_section("R-twin", t.R04)}};
  if (name == "ricci")
    return {name,
            {tensor_section("rho", o.ricci), scalar_section("tau", o.tau),
             tensor_section("rho-twin", t.ricci), scalar_section("tau-twin", t.tau)}};
  if (name == "P") return {name, {tensor_section("P", lower_index(o.P13, 3, ctx.role))}};
  if (name == "K") return {name, {tensor_section("K", lower_index(o.K13, 3, ctx.role))}};
  if (name == "D") return {name, {tensor_section("D", o.D.coefficients())}};
  if (name == "N") return {name, {tensor_section("N", lower_index(o.N12, 2, ctx.role))}};
  if (name == "S") return {name, {tensor_section("S", lower_index(o.S12, 2, ctx.role))}};
  if (name == "norms")
    return {name,
            {scalar_section("norm-nabla-J", o.nablaJ_sqnorm),
             scalar_section("norm-nabla-twin-J", t.nablaJ_sqnorm)}};
  throw StructuralError("unknown table '" + name + "'");
}

inline void emit_table_text(std::ostream& os, const TableData& table, bool include_zero) {
  os << "# " << table.name << "\n";
  for (const TableSection& section : table.sections) {
    if (table.sections.size() > 1 || section.label != table.name)
      os << "[" << section.label << "]\n";
    for (const TableRow& row : section.rows) {
      if (!include_zero && row.value.is_zero()) continue;
      if (row.index.empty()) {
        os << row.value.to_string() << "\n";
        continue;
      }
      for (std::size_t i = 0; i < row.index.size(); ++i) {
        if (i) os << ' ';
        os << row.index[i];
      }
      os << " : " << row.value.to_string() << "\n";
    }
  }
}

inline void emit_table_csv(std::ostream& os, const TableData& table, bool include_zero,
                           bool header) {
  if (header) os << "table,section,i1,i2,i3,i4,value\n";
  for (const TableSection& section : table.sections) {
    for (const TableRow& row : section.rows) {
      if (!include_zero && row.value.is_zero()) continue;
      os << table.name << ',' << section.label;
      for (std::size_t i = 0; i < 4; ++i) {
        os << ',';
        if (i < row.index.size()) os << row.index[i];
      }
      os << ',' << row.value.to_string() << "\n";
    }
  }
}

inline nlohmann::ordered_json table_json(const TableData& table, bool include_zero) {
  nlohmann::ordered_json jt;
  jt["name"] = table.name;
  jt["sections"] = nlohmann::ordered_json::array();
  for (const TableSection& section : table.sections) {
    nlohmann::ordered_json js;
    js["label"] = section.label;
    js["rows"] = nlohmann::ordered_json::array();
    for (const TableRow& row : section.rows) {
      if (!include_zero && row.value.is_zero()) continue;
      nlohmann::ordered_json jr;
      jr["index"] = row.index;
      jr["value"] = row.value.to_string();
      js["rows"].push_back(std::move(jr));
    }
    jt["sections"].push_back(std::move(js));
  }
  return jt;
}

// ---- report emission ----

inline void emit_validation_text(std::ostream& os, const ValidationReport& report) {
  for (const CheckResult& c : report.checks) {
    os << (c.passed ? "pass" : "FAIL") << "  " << c.name;
    if (!c.passed && !c.where.empty()) {
      os << " at (";
      for (std::size_t i = 0; i < c.where.size(); ++i) {
        if (i) os << ',';
        os << c.where[i];
      }
      os << ')';
    }
    if (!c.passed && !c.detail.empty()) os << "  [" << c.detail << "]";
    os << "\n";
  }
  for (const CheckResult& c : report.notes)
    os << "note  " << c.name << ": " << (c.passed ? "yes" : "no") << "\n";
  os << (report.all_passed() ? "spec is valid\n" : "spec is invalid\n");
}

inline nlohmann::ordered_json validation_json(const ValidationReport& report) {
  nlohmann::ordered_json doc;
  doc["checks"] = nlohmann::ordered_json::array();
  for (const CheckResult& c : report.checks) {
    nlohmann::ordered_json jc;
    jc["name"] = c.name;
    jc["passed"] = c.passed;
    if (!c.where.empty()) jc["where"] = c.where;
    if (!c.detail.empty()) jc["detail"] = c.detail;
    doc["checks"].push_back(std::move(jc));
  }
  doc["notes"] = nlohmann::ordered_json::array();
  for (const CheckResult& c : report.notes) {
    nlohmann::ordered_json jc;
    jc["name"] = c.name;
    jc["holds"] = c.passed;
    doc["notes"].push_back(std::move(jc));
  }
  doc["valid"] = report.all_passed();
  return doc;
}

inline void emit_invariance_text(std::ostream& os, const InvarianceReport& report) {
  for (const InvarianceCheck& c : report.checks) {
    os << "check " << (c.number < 10 ? " " : "") << c.number << "  " << c.id << ": "
       << to_string(c.status);
    if (c.status == CheckStatus::Failed) {
      if (!c.failing_object.empty()) os << "  [" << c.failing_object;
      if (!c.failing_index.empty()) {
        os << " at (";
        for (std::size_t i = 0; i < c.failing_index.size(); ++i) {
          if (i) os << ',';
          os << c.failing_index[i];
        }
        os << ')';
      }
      if (!c.failing_object.empty()) os << ']';
    }
    os << "\n";
  }
  os << (static_cast<int>(report.checks.size()) - report.failed_count()) << "/"
     << report.checks.size() << " checks passed\n";
}

inline void emit_invariance_csv(std::ostream& os, const InvarianceReport& report) {
  os << "number,id,status,failing_object,failing_index\n";
  for (const InvarianceCheck& c : report.checks) {
    os << c.number << ',' << c.id << ',' << to_string(c.status) << ','
       << c.failing_object << ',';
    for (std::size_t i = 0; i < c.failing_index.size(); ++i) {
      if (i) os << ' ';
      os << c.failing_index[i];
    }
    os << "\n";
  }
}

inline nlohmann::ordered_json invariance_json(const InvarianceReport& report) {
  nlohmann::ordered_json doc;
  doc["checks"] = nlohmann::ordered_json::array();
  for (const InvarianceCheck& c : report.checks) {
    nlohmann::ordered_json jc;
    jc["number"] = c.number;
    jc["id"] = c.id;
    jc["description"] = c.description;
    jc["status"] = to_string(c.status);
    if (!c.failing_object.empty()) jc["failing_object"] = c.failing_object;
    if (!c.failing_index.empty()) jc["failing_index"] = c.failing_index;
    doc["checks"].push_back(std::move(jc));
  }
  doc["passed"] = static_cast<int>(report.checks.size()) - report.failed_count();
  doc["failed"] = report.failed_count();
  return doc;
}

inline void emit_theorem3_text(std::ostream& os, const Theorem3Report& report) {
  const auto yesno = [](bool b) { return b ? "yes" : "no"; };
  os << "(i)   Lee forms closed: " << yesno(report.lee_forms_closed) << "\n";
  for (const Polynomial& p : report.closedness_conditions)
    os << "      condition: " << p.to_string() << " = 0\n";
  os << "(ii)  conformally flat (both Weyl tensors vanish): "
     << yesno(report.conformally_flat) << "\n";
  os << "      curvature expressed through ricci and tau: "
     << yesno(report.curvature_form_identity) << "\n";
  os << "(iii) scalar flat: " << yesno(report.scalar_flat)
     << ", isotropic Kaehler: " << yesno(report.isotropic_kahler) << "\n";
  for (const Polynomial& p : report.flatness_conditions)
    os << "      condition: " << p.to_string() << " = 0\n";
}

inline nlohmann::ordered_json theorem3_json(const Theorem3Report& report) {
  nlohmann::ordered_json doc;
  doc["lee_forms_closed"] = report.lee_forms_closed;
  doc["closedness_conditions"] = nlohmann::ordered_json::array();
  for (const Polynomial& p : report.closedness_conditions)
    doc["closedness_conditions"].push_back(p.to_string());
  doc["conformally_flat"] = report.conformally_flat;
  doc["curvature_form_identity"] = report.curvature_form_identity;
  doc["scalar_flat"] = report.scalar_flat;
  doc["isotropic_kahler"] = report.isotropic_kahler;
  doc["flatness_conditions"] = nlohmann::ordered_json::array();
  for (const Polynomial& p : report.flatness_conditions)
    doc["flatness_conditions"].push_back(p.to_string());
  return doc;
}

}  // namespace norden

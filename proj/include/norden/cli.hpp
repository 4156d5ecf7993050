#pragma once

#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "norden/specfile.hpp"
#include "norden/tables.hpp"

namespace norden {

/// Exit codes: 0 success / all checks pass, 1 check failure, 2 input error.
enum ExitCode : int { ExitOk = 0, ExitCheckFailed = 1, ExitInputError = 2 };

namespace cli_detail {

struct CommonOptions {
  std::string file;
  bool use_example = false;
  std::string subst;
  std::string format = "text";
  bool include_zero = false;
};

inline void add_common(CLI::App* cmd, CommonOptions& opts, bool with_all) {
  cmd->add_option("file", opts.file, "manifold spec file (JSON)");
  cmd->add_flag("--example", opts.use_example, "use the built-in 4-dimensional example");
  cmd->add_option("--subst", opts.subst,
                  "substitute parameters, e.g. l1=1,l2=-1/2,l3=0,l4=2");
  cmd->add_option("--format", opts.format, "output format: text, csv, structured")
      ->check(CLI::IsMember({"text", "csv", "structured"}));
  if (with_all)
    cmd->add_flag("--all", opts.include_zero, "include zero components in tables");
}

inline std::map<std::string, Rational> parse_substitution(const std::string& text,
                                                          const VariableList& params) {
  std::map<std::string, Rational> assignment;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t comma = text.find(',', pos);
    if (comma == std::string::npos) comma = text.size();
    const std::string item = text.substr(pos, comma - pos);
    const std::size_t eq = item.find('=');
    if (eq == std::string::npos)
      throw StructuralError("substitution entry '" + item + "' is not name=value");
    const std::string name = item.substr(0, eq);
    if (std::find(params.begin(), params.end(), name) == params.end())
      throw StructuralError("substitution names unknown parameter '" + name + "'");
    assignment.emplace(name, Rational::parse(item.substr(eq + 1)));
    pos = comma + 1;
  }
  return assignment;
}

inline FrameSpec load_spec(const CommonOptions& opts, bool validate) {
  if (opts.use_example == !opts.file.empty())
    throw StructuralError("exactly one of <file> or --example is required");
  FrameSpec spec = [&]() {
    if (opts.use_example) return builtin_example();
    std::ifstream in(opts.file);
    if (!in) throw StructuralError("cannot open spec file '" + opts.file + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return validate ? specfile::parse(buffer.str())
                    : specfile::parse_unvalidated(buffer.str());
  }();
  if (opts.use_example && validate) require_valid(spec);
  if (!opts.subst.empty())
    spec = substitute_spec(spec, parse_substitution(opts.subst, spec.params));
  return spec;
}

inline std::vector<std::string> split_names(const std::string& list) {
  std::vector<std::string> names;
  std::size_t pos = 0;
  while (pos <= list.size()) {
    std::size_t comma = list.find(',', pos);
    if (comma == std::string::npos) comma = list.size();
    const std::string name = list.substr(pos, comma - pos);
    if (!name.empty()) names.push_back(name);
    pos = comma + 1;
  }
  return names;
}

}  // namespace cli_detail

/// Runs the command line given as plain arguments (without the program
/// name). All user-visible output goes to `out`, errors to `err`.
inline int run_cli(const std::vector<std::string>& args, std::ostream& out,
                   std::ostream& err) {
  CLI::App app{"exact tensor calculus for almost Norden manifolds on Lie groups"};
  app.require_subcommand(1);

  cli_detail::CommonOptions validate_opts, classify_opts, tables_opts, invariance_opts,
      theorem3_opts;
  std::string table_list;

  CLI::App* cmd_validate =
      app.add_subcommand("validate", "check the structural conditions of a spec");
  cli_detail::add_common(cmd_validate, validate_opts, false);

  CLI::App* cmd_classify =
      app.add_subcommand("classify", "class of the structure for both metrics");
  cli_detail::add_common(cmd_classify, classify_opts, false);

  CLI::App* cmd_tables = app.add_subcommand("tables", "emit component tables");
  cmd_tables->add_option("names", table_list, "comma-separated table names")->required();
  cli_detail::add_common(cmd_tables, tables_opts, true);

  CLI::App* cmd_invariance =
      app.add_subcommand("invariance", "run the twin-interchange invariance suite");
  cli_detail::add_common(cmd_invariance, invariance_opts, false);

  CLI::App* cmd_theorem3 =
      app.add_subcommand("theorem3", "closedness, conformal flatness and isotropy criteria");
  cli_detail::add_common(cmd_theorem3, theorem3_opts, false);

  std::vector<const char*> argv;
  argv.push_back("norden");
  for (const std::string& a : args) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return ExitOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return ExitInputError;
  }

  try {
    if (cmd_validate->parsed()) {
      const FrameSpec spec = cli_detail::load_spec(validate_opts, false);
      const ValidationReport report = validate_spec(spec);
      const OutputFormat format = parse_format(validate_opts.format);
      if (format == OutputFormat::Structured) {
        nlohmann::ordered_json doc = validation_json(report);
        doc["command"] = "validate";
        out << doc.dump(2) << "\n";
      } else if (format == OutputFormat::Csv) {
        out << "name,passed,where,detail\n";
        for (const CheckResult& c : report.checks) {
          out << c.name << ',' << (c.passed ? "pass" : "fail") << ',';
          for (std::size_t i = 0; i < c.where.size(); ++i) {
            if (i) out << ' ';
            out << c.where[i];
          }
          out << ',' << c.detail << "\n";
        }
      } else {
        emit_validation_text(out, report);
      }
      return report.all_passed() ? ExitOk : ExitCheckFailed;
    }

    if (cmd_classify->parsed()) {
      const FrameSpec spec = cli_detail::load_spec(classify_opts, true);
      const GeometryContext ctx = build_context(spec);
      const OutputFormat format = parse_format(classify_opts.format);
      if (format == OutputFormat::Structured) {
        nlohmann::ordered_json doc;
        doc["command"] = "classify";
        doc["class"] = to_string(ctx.objects.cls);
        doc["class_twin"] = to_string(ctx.objects_twin.cls);
        out << doc.dump(2) << "\n";
      } else if (format == OutputFormat::Csv) {
        out << "role,class\n";
        out << "primary," << to_string(ctx.objects.cls) << "\n";
        out << "twin," << to_string(ctx.objects_twin.cls) << "\n";
      } else {
        out << "class: " << to_string(ctx.objects.cls) << "\n";
        out << "class of the twin structure: " << to_string(ctx.objects_twin.cls) << "\n";
      }
      return ExitOk;
    }

    if (cmd_tables->parsed()) {
      const std::vector<std::string> names = cli_detail::split_names(table_list);
      if (names.empty()) throw StructuralError("no table names given");
      for (const std::string& name : names)
        if (std::find(table_names().begin(), table_names().end(), name) ==
            table_names().end())
          throw StructuralError("unknown table '" + name + "'");
      const FrameSpec spec = cli_detail::load_spec(tables_opts, true);
      const GeometryContext ctx = build_context(spec);
      const OutputFormat format = parse_format(tables_opts.format);
      if (format == OutputFormat::Structured) {
        nlohmann::ordered_json doc;
        doc["command"] = "tables";
        doc["tables"] = nlohmann::ordered_json::array();
        for (const std::string& name : names)
          doc["tables"].push_back(table_json(make_table(ctx, name), tables_opts.include_zero));
        out << doc.dump(2) << "\n";
      } else if (format == OutputFormat::Csv) {
        bool header = true;
        for (const std::string& name : names) {
          emit_table_csv(out, make_table(ctx, name), tables_opts.include_zero, header);
          header = false;
        }
      } else {
        for (const std::string& name : names)
          emit_table_text(out, make_table(ctx, name), tables_opts.include_zero);
      }
      return ExitOk;
    }

    if (cmd_invariance->parsed()) {
      const FrameSpec spec = cli_detail::load_spec(invariance_opts, true);
      const GeometryContext ctx = build_context(spec);
      const InvarianceReport report = invariance_suite(ctx);
      const OutputFormat format = parse_format(invariance_opts.format);
      if (format == OutputFormat::Structured) {
        nlohmann::ordered_json doc = invariance_json(report);
        doc["command"] = "invariance";
        out << doc.dump(2) << "\n";
      } else if (format == OutputFormat::Csv) {
        emit_invariance_csv(out, report);
      } else {
        emit_invariance_text(out, report);
      }
      return report.all_passed() ? ExitOk : ExitCheckFailed;
    }

    if (cmd_theorem3->parsed()) {
      const FrameSpec spec = cli_detail::load_spec(theorem3_opts, true);
      const GeometryContext ctx = build_context(spec);
      const Theorem3Report report = theorem3_criteria(ctx);
      const OutputFormat format = parse_format(theorem3_opts.format);
      if (format == OutputFormat::Structured) {
        nlohmann::ordered_json doc = theorem3_json(report);
        doc["command"] = "theorem3";
        out << doc.dump(2) << "\n";
      } else if (format == OutputFormat::Csv) {
        out << "criterion,holds\n";
        out << "lee-forms-closed," << (report.lee_forms_closed ? "yes" : "no") << "\n";
        out << "conformally-flat," << (report.conformally_flat ? "yes" : "no") << "\n";
        out << "curvature-form-identity," << (report.curvature_form_identity ? "yes" : "no")
            << "\n";
        out << "scalar-flat," << (report.scalar_flat ? "yes" : "no") << "\n";
        out << "isotropic-kahler," << (report.isotropic_kahler ? "yes" : "no") << "\n";
      } else {
        emit_theorem3_text(out, report);
      }
      const bool all = report.lee_forms_closed && report.conformally_flat &&
                       report.curvature_form_identity && report.scalar_flat &&
                       report.isotropic_kahler;
      return all ? ExitOk : ExitCheckFailed;
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return ExitInputError;
  }

  err << "no subcommand given\n";
  return ExitInputError;
}

}  // namespace norden

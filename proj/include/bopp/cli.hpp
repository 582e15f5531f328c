#pragma once

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "bopp/examples.hpp"
#include "bopp/report.hpp"

namespace bopp {

namespace detail {

struct CommonOpts {
  std::string input_file;
  std::string example;
  int order = 0;
  std::string format = "text";
  std::string output;
  std::string inject_fault;  // verify only: g | f | eta
};

inline ParsedBivector load_input(const CommonOpts& opts, std::string& source_label) {
  if (!opts.input_file.empty() && !opts.example.empty())
    throw ParseError("--input and --example are mutually exclusive");
  if (!opts.input_file.empty()) {
    std::ifstream in(opts.input_file);
    if (!in) throw ParseError("cannot open input file: " + opts.input_file);
    std::stringstream buf;
    buf << in.rdbuf();
    source_label = "file:" + opts.input_file;
    return parse_bivector_file(buf.str());
  }
  if (!opts.example.empty()) {
    Bivector theta = build_example(opts.example);
    source_label = "example:" + opts.example;
    return {theta.varset(), theta};
  }
  throw ParseError("one of --input or --example is required");
}

inline int emit(const CommonOpts& opts, const std::string& payload, std::ostream& out,
                std::ostream& err) {
  if (opts.output.empty()) {
    out << payload;
    return 0;
  }
  std::ofstream f(opts.output, std::ios::binary);
  if (!f) {
    err << "error: cannot write " << opts.output << "\n";
    return 2;
  }
  f << payload;
  return 0;
}

/// Deliberate single-entry corruption of one pipeline object; the matching
/// defect check then runs on the corrupted data and is expected to fail,
/// driving the exit code to 1. A passing check here would be a silent miss.
inline void run_fault_injection(const std::string& site, const Realization& real,
                                VerifyReport& rep) {
  if (site == "eta") {
    auto bad = OctonionStructure::with_eta3_flipped(1, 2, 3);
    auto sweep = bad.verify_contractions();
    rep.add("contraction-sweep(injected eta fault)", sweep.pass,
            sweep.pass ? "corrupted table slipped through" : sweep.first_failure);
    return;
  }
  // The bumped index tuples keep tail and lead disjoint; a bump whose tail
  // repeats a lead index stays inside the solvable class and is not a
  // violation of the checked identity.
  if (site == "g") {
    if (real.order < 2) throw ParseError("fault site 'g' needs --order >= 2");
    if (real.source.dim() < 3) throw ParseError("fault site 'g' needs dim >= 3");
    SymTensor g = compute_G(real, real.order - 1);
    auto tails = multisets(g.dim(), g.tail_arity());
    g.add({1, 2}, tails.back(), Poly::constant(g.varset(), rat(1)));
    SymTensor defect = cyclicity_defect(g);
    rep.add("cyclicity-relation(injected g fault)", defect.is_zero(),
            defect.is_zero() ? "corrupted tensor slipped through" : defect.sample());
    return;
  }
  if (site == "f") {
    if (real.order < 2) throw ParseError("fault site 'f' needs --order >= 2");
    if (real.source.dim() < 4) throw ParseError("fault site 'f' needs dim >= 4");
    SymTensor f = compute_F(real, real.order);
    auto tails = multisets(f.dim(), f.tail_arity());
    f.add({1, 2, 3}, tails.back(), Poly::constant(f.varset(), rat(1)));
    SymTensor defect = four_term_defect(f);
    rep.add("four-term-condition(injected f fault)", defect.is_zero(),
            defect.is_zero() ? "corrupted tensor slipped through" : defect.sample());
    return;
  }
  throw ParseError("unknown fault site: " + site + " (use g, f or eta)");
}

}  // namespace detail

/// Command-line driver. Exit codes: 0 success / verified, 1 verification
/// failure (a defect was found), 2 input error.
inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"order-by-order symplectic realization of quasi-Poisson bivectors"};
  app.require_subcommand(1);

  detail::CommonOpts realize_opts, verify_opts;

  auto add_common = [](CLI::App* cmd, detail::CommonOpts& o) {
    cmd->add_option("--input", o.input_file, "bivector file (dim/param/theta lines)");
    cmd->add_option("--example", o.example, "built-in example name (see `examples`)");
    cmd->add_option("--order", o.order, "realization order (>= 1)")->required();
    cmd->add_option("--format", o.format, "report format: text or json")
        ->check(CLI::IsMember({"text", "json"}));
    cmd->add_option("--output", o.output, "write the report to a file instead of stdout");
  };

  CLI::App* cmd_realize =
      app.add_subcommand("realize", "construct the realization and print the report");
  add_common(cmd_realize, realize_opts);

  CLI::App* cmd_verify =
      app.add_subcommand("verify", "realize and run the full invariant suite");
  add_common(cmd_verify, verify_opts);
  cmd_verify
      ->add_option("--inject-fault", verify_opts.inject_fault,
                   "corrupt one entry of g, f or eta and confirm the matching check fails")
      ->check(CLI::IsMember({"g", "f", "eta"}));

  CLI::App* cmd_examples = app.add_subcommand("examples", "list built-in examples");

  std::vector<std::string> argv_rev(args.rbegin(), args.rend());
  try {
    app.parse(argv_rev);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (cmd_examples->parsed()) {
      for (const auto& e : builtin_examples()) {
        out << e.name << "  (dim " << e.dim;
        for (const auto& p : e.params) out << ", param " << p;
        out << "): " << e.summary << "\n";
      }
      return 0;
    }

    const bool verifying = cmd_verify->parsed();
    detail::CommonOpts& opts = verifying ? verify_opts : realize_opts;
    if (opts.order < 1) throw ParseError("--order must be >= 1");

    std::string source_label;
    ParsedBivector input = detail::load_input(opts, source_label);

    Realization real;
    VerifyReport vrep;
    if (verifying) {
      vrep = verify(input.theta, opts.order, &real);
      if (!vrep.verified && vrep.checks.size() == 1) {
        // realization itself failed; no data to report beyond the message
        err << "error: " << vrep.checks.front().detail << "\n";
        return 1;
      }
      if (!opts.inject_fault.empty()) detail::run_fault_injection(opts.inject_fault, real, vrep);
    } else {
      real = realize(input.theta, opts.order);
    }
    ExtendedBrackets eb = extended_brackets(real);

    std::string payload;
    if (opts.format == "json")
      payload = report_json(source_label, real, eb, verifying ? &vrep : nullptr).dump(2) + "\n";
    else
      payload = report_text(source_label, real, eb, verifying ? &vrep : nullptr);

    const int emit_rc = detail::emit(opts, payload, out, err);
    if (emit_rc != 0) return emit_rc;
    if (verifying && !vrep.verified) return 1;
    return 0;
  } catch (const ConsistencyError& e) {
    err << "defect: " << e.what() << "\n";
    return 1;
  } catch (const ParseError& e) {
    err << "error: " << e.what();
    if (e.line > 0) {
      err << " (line " << e.line;
      if (e.column > 0) err << ", column " << e.column;
      err << ")";
    }
    err << "\n";
    return 2;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace bopp

/*
 * Copyright 2026 The ilsreconf Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#pragma once

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ilsr/certificate.hpp"
#include "ilsr/cnf.hpp"
#include "ilsr/dispatch.hpp"
#include "ilsr/generators.hpp"
#include "ilsr/io.hpp"

namespace ilsr::cli {

// Exit codes: 0 yes/success, 1 no, 2 usage or parse error, 3 budget
// exceeded / undecided.
inline constexpr int kExitYes = 0;
inline constexpr int kExitNo = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitUndecided = 3;

namespace detail_cli {

inline ILSInstance load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open instance file '" + path + "'");
  return parse_instance(in);
}

/// --from/--to accept inline integers ("0 0 1") or a file of integers.
inline Assignment load_assignment(const std::string& arg, int n) {
  bool inline_form = !arg.empty() && arg.find_first_not_of("0123456789+- \t") ==
                                         std::string::npos;
  if (inline_form) return parse_assignment(arg, n);
  std::ifstream in(arg);
  if (!in) throw std::invalid_argument("cannot open assignment file '" + arg + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_assignment(buf.str(), n);
}

inline std::uint64_t state_budget() {
  if (const char* env = std::getenv("ILS_MAX_STATES")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end && *end == '\0' && v > 0) return v;
    throw std::invalid_argument("ILS_MAX_STATES must be a positive integer");
  }
  return kDefaultStateBudget;
}

inline void write_text_file(const std::string& path, const std::string& body) {
  std::ofstream out(path);
  if (!out) throw std::invalid_argument("cannot write to '" + path + "'");
  out << body;
}

inline std::string json_rational(const Rational& q) { return rational_str(q); }

}  // namespace detail_cli

inline int cmd_index(const std::string& file, bool json, std::ostream& out) {
  ILSInstance inst = detail_cli::load_instance(file);
  IndexSolution idx = compute_index(inst);
  RegimeClass regime = classify(idx);
  if (json) {
    nlohmann::json j;
    j["z"] = detail_cli::json_rational(idx.z);
    j["regime"] = regime_name(regime);
    j["alpha_half_integral"] = idx.alpha_half_integral;
    auto& alpha = j["alpha"] = nlohmann::json::array();
    for (const auto& a : idx.alpha) alpha.push_back(detail_cli::json_rational(a));
    out << j.dump(2) << '\n';
  } else {
    out << "z = " << rational_str(idx.z) << '\n';
    out << "regime = " << regime_name(regime) << '\n';
  }
  return kExitYes;
}

inline int cmd_solve(const std::string& file, const std::string& from, const std::string& to,
                     const std::string& method_name, const std::string& witness_path,
                     bool json, std::ostream& out) {
  ILSInstance inst = detail_cli::load_instance(file);
  Assignment s = detail_cli::load_assignment(from, inst.vars());
  Assignment t = detail_cli::load_assignment(to, inst.vars());
  auto method = method_from_name(method_name);
  if (!method) throw std::invalid_argument("unknown method '" + method_name + "'");
  SolveOutcome res = solve_dispatch(inst, s, t, *method, detail_cli::state_budget());

  if (!witness_path.empty() && res.answer == SolveOutcome::Answer::yes) {
    std::ostringstream body;
    if (res.cpath) write_compressed(*res.cpath, body);
    else if (res.path) write_path(*res.path, body);
    detail_cli::write_text_file(witness_path, body.str());
  }

  const char* answer = res.answer == SolveOutcome::Answer::yes
                           ? "YES"
                           : res.answer == SolveOutcome::Answer::no ? "NO" : "UNDECIDED";
  if (json) {
    nlohmann::json j;
    j["answer"] = answer;
    j["method"] = res.method_used;
    if (!res.note.empty()) j["note"] = res.note;
    if (res.path) j["witness_length"] = res.path->length();
    if (res.cpath) j["witness_length"] = res.cpath->expanded_length().str();
    out << j.dump(2) << '\n';
  } else {
    out << answer << '\n';
    out << "method = " << res.method_used << '\n';
    if (res.path) out << "witness length = " << res.path->length() << '\n';
    if (res.cpath)
      out << "witness length = " << res.cpath->expanded_length().str()
          << " (compressed, " << res.cpath->moves.size() << " moves)\n";
    if (!res.note.empty()) out << "note: " << res.note << '\n';
  }
  switch (res.answer) {
    case SolveOutcome::Answer::yes: return kExitYes;
    case SolveOutcome::Answer::no: return kExitNo;
    default: return kExitUndecided;
  }
}

inline int cmd_stats(const std::string& file, bool json, std::ostream& out) {
  ILSInstance inst = detail_cli::load_instance(file);
  GraphStats st = graph_stats(inst, detail_cli::state_budget());
  if (json) {
    nlohmann::json j;
    j["feasible_count"] = st.feasible_count;
    j["component_count"] = st.component_count();
    auto& comps = j["components"] = nlohmann::json::array();
    for (const auto& c : st.components) {
      nlohmann::json jc;
      jc["representative"] = format_assignment(c.representative);
      jc["size"] = c.size;
      jc["diameter"] = c.diameter;
      jc["is_path"] = c.is_path;
      comps.push_back(std::move(jc));
    }
    out << j.dump(2) << '\n';
  } else {
    out << "feasible points = " << st.feasible_count << '\n';
    out << "components = " << st.component_count() << '\n';
    for (const auto& c : st.components)
      out << "  [" << format_assignment(c.representative) << "] size=" << c.size
          << " diameter=" << c.diameter << (c.is_path ? " path" : "") << '\n';
  }
  return kExitYes;
}

inline int cmd_certify(const std::string& file, const std::string& from,
                       const std::string& to, const std::string& witness_path,
                       bool json, std::ostream& out) {
  ILSInstance inst = detail_cli::load_instance(file);
  Assignment s = detail_cli::load_assignment(from, inst.vars());
  Assignment t = detail_cli::load_assignment(to, inst.vars());
  std::ifstream win(witness_path);
  if (!win) throw std::invalid_argument("cannot open witness file '" + witness_path + "'");
  std::string header;
  {
    std::string raw;
    while (std::getline(win, raw)) {
      std::size_t a = raw.find_first_not_of(" \t\r");
      if (a == std::string::npos || raw[a] == '#') continue;
      header = raw.substr(a);
      break;
    }
    win.clear();
    win.seekg(0);
  }

  bool valid = false;
  std::string kind, reason;
  if (header.rfind("path", 0) == 0) {
    kind = "path";
    PathWitness w = read_path(win, inst.vars());
    if (auto why = path_violation(inst, w)) {
      reason = *why;
    } else if (w.steps.front() != s) {
      reason = "witness does not start at --from";
    } else if (w.steps.back() != t) {
      reason = "witness does not end at --to";
    } else {
      valid = true;
    }
  } else if (header.rfind("cpath", 0) == 0) {
    kind = "compressed path";
    CompressedPath cp = read_compressed(win);
    try {
      Assignment end = walk_compressed(inst, s, cp);
      if (end != t) reason = "expansion does not end at --to";
      else valid = true;
    } catch (const std::exception& e) {
      reason = e.what();
    }
  } else if (header.rfind("certificate", 0) == 0) {
    kind = "certificate";
    Certificate cert = read_certificate(win);
    if (static_cast<int>(cert.w.size()) != inst.vars()) {
      reason = "certificate arity mismatch";
    } else {
      ILSInstance normalized = flip_columns(inst, cert.partition.flipped);
      Assignment sn = flip_points(inst, cert.partition.flipped, s);
      Assignment tn = flip_points(inst, cert.partition.flipped, t);
      Assignment m = min_qh(cert.partition, tn, sn, tn);
      if (m != cert.reset_target) {
        reason = "reset target is not the anchored minimum of the endpoints";
      } else if (check_certificate(inst, cert, s) || check_certificate(inst, cert, t)) {
        valid = true;  // proves the endpoints are disconnected
      } else {
        reason = "conditions C0-C3 fail for both endpoints";
      }
    }
  } else {
    throw std::invalid_argument("unrecognized witness header '" + header + "'");
  }

  if (json) {
    nlohmann::json j;
    j["kind"] = kind;
    j["valid"] = valid;
    if (!reason.empty()) j["reason"] = reason;
    out << j.dump(2) << '\n';
  } else {
    out << (valid ? "VALID " : "INVALID ") << kind;
    if (!reason.empty()) out << ": " << reason;
    out << '\n';
  }
  return valid ? kExitYes : kExitNo;
}

inline int cmd_certificate(const std::string& file, const std::string& from,
                           const std::string& to, const std::string& out_path, int cap,
                           bool json, std::ostream& out) {
  ILSInstance inst = detail_cli::load_instance(file);
  Assignment s = detail_cli::load_assignment(from, inst.vars());
  Assignment t = detail_cli::load_assignment(to, inst.vars());
  auto cert = search_certificate_fixed_n(inst, s, t, cap);
  if (json) {
    nlohmann::json j;
    j["disconnected"] = cert.has_value();
    if (cert) j["w"] = format_assignment(cert->w);
    out << j.dump(2) << '\n';
  } else if (cert) {
    out << "DISCONNECTED (certificate w = " << format_assignment(cert->w) << ")\n";
  } else {
    out << "CONNECTED (no disconnection certificate exists)\n";
  }
  if (cert && !out_path.empty()) {
    std::ostringstream body;
    write_certificate(*cert, body);
    detail_cli::write_text_file(out_path, body.str());
  }
  return cert ? kExitYes : kExitNo;
}

struct GenRequest {
  std::string family;
  int n = 2;
  std::int64_t d = 1;
  std::string gamma = "2";
  std::string cnf_path;
  std::string out_path;
  std::string ils_path;
};

inline int cmd_gen(const GenRequest& req, std::ostream& out) {
  auto emit_instance = [&](const ILSInstance& inst, const std::string& preamble) {
    std::ostringstream body;
    if (!preamble.empty()) body << preamble;
    serialize_instance(inst, body);
    if (req.out_path.empty()) out << body.str();
    else detail_cli::write_text_file(req.out_path, body.str());
  };

  if (req.family == "chain") {
    emit_instance(gen_chain(req.n, req.d), "");
  } else if (req.family == "hypercube") {
    emit_instance(gen_hypercube(req.n), "");
  } else if (req.family == "eqchain") {
    emit_instance(gen_equality_chain(req.d), "");
  } else if (req.family == "diameter") {
    DiameterFamily fam = gen_diameter_family(req.n, req.d);
    std::ostringstream pre;
    pre << "# s = " << format_assignment(fam.s) << '\n';
    pre << "# t = " << format_assignment(fam.t) << '\n';
    pre << "# recurrence path length = " << fam.recurrence_length.str() << '\n';
    emit_instance(fam.instance, pre.str());
  } else if (req.family == "sat-gadget") {
    if (req.cnf_path.empty()) throw std::invalid_argument("sat-gadget needs --cnf");
    std::ifstream in(req.cnf_path);
    if (!in) throw std::invalid_argument("cannot open '" + req.cnf_path + "'");
    CnfFormula phi = parse_dimacs(in);
    GadgetParams params = GadgetParams::from_gamma(parse_rational(req.gamma));
    CnfFormula psi = expand_sat_gadget(phi, params);
    std::ostringstream body;
    write_dimacs(psi, body);
    if (req.out_path.empty()) out << body.str();
    else detail_cli::write_text_file(req.out_path, body.str());
    if (!req.ils_path.empty()) {
      std::ostringstream ils;
      serialize_instance(sat_to_ils(psi), ils);
      detail_cli::write_text_file(req.ils_path, ils.str());
    }
  } else if (req.family == "ils-gadget") {
    GadgetParams params = GadgetParams::from_gamma(parse_rational(req.gamma));
    DiameterFamily fam = gen_diameter_family(req.n, req.d);
    emit_instance(expand_ils_gadget(fam, params), "");
  } else {
    throw std::invalid_argument("unknown family '" + req.family + "'");
  }
  return kExitYes;
}

/// Entry point shared by the binary and the tests.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"integer linear system reconfiguration toolkit"};
  app.require_subcommand(1);
  bool json = false;
  app.add_flag("--json", json, "machine-readable output");

  std::string file, from, to, method = "auto", witness, out_path;
  int cap = 6;

  auto* cindex = app.add_subcommand("index", "compute the complexity index and regime");
  cindex->add_option("file", file)->required();

  auto* csolve = app.add_subcommand("solve", "decide reachability between two solutions");
  csolve->add_option("file", file)->required();
  csolve->add_option("--from", from)->required();
  csolve->add_option("--to", to)->required();
  csolve->add_option("--method", method)
      ->check(CLI::IsMember({"auto", "horn", "tvpi", "ils1", "unit", "zlt1", "oracle"}));
  csolve->add_option("--witness", witness, "write the witness path here on YES");

  auto* cstats = app.add_subcommand("stats", "solution-graph census via the oracle");
  cstats->add_option("file", file)->required();

  auto* ccertify = app.add_subcommand("certify", "re-validate a path, compressed path or certificate");
  ccertify->add_option("file", file)->required();
  ccertify->add_option("--from", from)->required();
  ccertify->add_option("--to", to)->required();
  ccertify->add_option("--witness", witness)->required();

  auto* ccert = app.add_subcommand("certificate", "search a disconnection certificate (fixed n)");
  ccert->add_option("file", file)->required();
  ccert->add_option("--from", from)->required();
  ccert->add_option("--to", to)->required();
  ccert->add_option("--out", out_path, "write the certificate here when found");
  ccert->add_option("--cap", cap, "variable-count cap for the search");

  GenRequest gen;
  auto* cgen = app.add_subcommand("gen", "emit an instance family");
  cgen->add_option("family", gen.family)
      ->required()
      ->check(CLI::IsMember({"chain", "hypercube", "eqchain", "diameter", "sat-gadget",
                             "ils-gadget"}));
  cgen->add_option("--n", gen.n);
  cgen->add_option("--d", gen.d);
  cgen->add_option("--gamma", gen.gamma);
  cgen->add_option("--cnf", gen.cnf_path);
  cgen->add_option("--out", gen.out_path);
  cgen->add_option("--ils", gen.ils_path);

  std::vector<char*> argv;
  std::vector<std::string> storage = args;
  storage.insert(storage.begin(), "ils");
  argv.reserve(storage.size());
  for (auto& a : storage) argv.push_back(a.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitYes;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (app.got_subcommand(cindex)) return cmd_index(file, json, out);
    if (app.got_subcommand(csolve)) return cmd_solve(file, from, to, method, witness, json, out);
    if (app.got_subcommand(cstats)) return cmd_stats(file, json, out);
    if (app.got_subcommand(ccertify)) return cmd_certify(file, from, to, witness, json, out);
    if (app.got_subcommand(ccert))
      return cmd_certificate(file, from, to, out_path, cap, json, out);
    if (app.got_subcommand(cgen)) return cmd_gen(gen, out);
    err << "error: no subcommand\n";
    return kExitUsage;
  } catch (const budget_error& e) {
    err << "undecided: " << e.what() << '\n';
    return kExitUndecided;
  } catch (const parse_error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
}

}  // namespace ilsr::cli

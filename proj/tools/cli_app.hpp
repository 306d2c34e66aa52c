// Copyright 2026 The tradius Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command dispatch for the tradius tool, kept in a header so tests can drive
// it in-process.

#pragma once

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "tradius/tradius.hpp"

namespace tradius::cli {

inline constexpr int kOk = 0;
inline constexpr int kViolated = 1;
inline constexpr int kUsage = 2;

struct Flags {
  std::string graph;
  int t = -1;
  int rounds = -1;
  int n = 0;
  std::string family;
  std::string format;
  std::string patterns;
  std::string pattern;
  std::string inputs;
  std::string task = "consensus";
  std::string algo = "core";
  std::string emit;
  bool json = false;
  unsigned threads = 0;
};

inline Json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError(path + ": cannot open file");
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw FormatError(path + ": " + e.what());
  }
}

inline Graph load_graph(const std::string& path) {
  if (path.empty()) throw ParameterError("--graph is required");
  const Json doc = load_json(path);
  try {
    return Graph::from_json(doc);
  } catch (const FormatError& e) {
    throw FormatError(path + ": " + e.what());
  }
}

inline FailurePattern load_pattern(const Graph& g, const std::string& path) {
  const Json doc = load_json(path);
  try {
    return pattern_from_json(g, doc);
  } catch (const FormatError& e) {
    throw FormatError(path + ": " + e.what());
  }
}

/// Accepts a JSON array of patterns or {"patterns": [...]}.
inline PatternClass load_pattern_class(const Graph& g, const std::string& path) {
  const Json doc = load_json(path);
  const Json* list = &doc;
  if (doc.is_object() && doc.contains("patterns")) list = &doc["patterns"];
  if (!list->is_array())
    throw FormatError(path + ": expected an array of patterns or {\"patterns\": [...]}");
  PatternClass out{path, {}};
  for (std::size_t i = 0; i < list->size(); ++i) {
    try {
      out.members.push_back(pattern_from_json(g, (*list)[i]));
    } catch (const FormatError& e) {
      throw FormatError(path + ": patterns[" + std::to_string(i) + "]: " + e.what());
    }
  }
  return out;
}

/// "1=10,2=20" -> {1: 10, 2: 20}.
inline Inputs parse_inputs(const std::string& text) {
  Inputs out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw FormatError("--inputs: expected id=value, got \"" + item + "\"");
    try {
      std::size_t used = 0;
      const std::string key = item.substr(0, eq), val = item.substr(eq + 1);
      const int id = std::stoi(key, &used);
      if (used != key.size()) throw std::invalid_argument(key);
      const long long value = std::stoll(val, &used);
      if (used != val.size()) throw std::invalid_argument(val);
      if (!out.emplace(id, value).second)
        throw FormatError("--inputs: node " + key + " given twice");
    } catch (const std::logic_error&) {
      throw FormatError("--inputs: malformed entry \"" + item + "\"");
    }
  }
  return out;
}

inline Json ids_map(const Graph& g, const std::vector<int>& per_index) {
  Json j = Json::object();
  for (std::size_t v = 0; v < g.size(); ++v) j[std::to_string(g.id(v))] = per_index[v];
  return j;
}

inline Json rounds_json(Rounds r) { return r ? Json(*r) : Json(nullptr); }
inline std::string rounds_text(Rounds r) { return r ? std::to_string(*r) : "inf"; }

inline std::string join(const std::vector<NodeId>& xs) {
  std::string s;
  for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? "," : "") + std::to_string(xs[i]);
  return s;
}

class Dispatcher {
 public:
  Dispatcher(const Flags& f, std::ostream& out, std::ostream& err) : f_(f), out_(out), err_(err) {
    opts_.threads = f.threads;
  }

  int gen() {
    const Graph g = generate(parse_family(f_.family), f_.n);
    const std::string text = g.to_json().dump() + "\n";
    if (!f_.emit.empty()) write(f_.emit, text);
    out_ << text;
    return kOk;
  }

  int connectivity_cmd() {
    const Graph g = load_graph(f_.graph);
    const int kappa = connectivity(g);
    if (f_.json) {
      Json j;
      j["nodes"] = g.size();
      j["edges"] = g.edge_count();
      j["kappa"] = kappa;
      j["min_degree"] = g.min_degree();
      out_ << j.dump() << "\n";
    } else {
      out_ << "kappa=" << kappa << " min_degree=" << g.min_degree() << " nodes=" << g.size()
           << " edges=" << g.edge_count() << "\n";
    }
    return kOk;
  }

  int radius_cmd() {
    const Graph g = load_graph(f_.graph);
    const RadiusResult r = radius(g, t(g), opts_);
    const std::string regime = r.below_connectivity ? "t<kappa" : "t>=kappa";
    if (f_.json) {
      Json j;
      j["radius"] = r.value;
      j["witness"] = r.witness;
      j["regime"] = regime;
      j["t"] = r.t;
      j["kappa"] = r.kappa;
      j["patterns"] = r.patterns;
      j["ecc"] = ids_map(g, r.node_ecc);
      j["empty_max"] = r.empty_max;
      out_ << j.dump() << "\n";
    } else {
      out_ << "radius=" << r.value << " witness=" << r.witness << " regime=" << regime << "\n";
    }
    return kOk;
  }

  int ecc_cmd() {
    const Graph g = load_graph(f_.graph);
    if (!f_.pattern.empty()) {
      const FailurePattern phi = load_pattern(g, f_.pattern);
      Flood sim(g, phi, settle_rounds(g));
      const auto comps = components(g, phi).components;
      Json j;
      j["pattern"] = pattern_to_json(g, phi);
      Json cs = Json::array();
      for (NodeSet c : comps) cs.push_back(g.to_ids(c));
      j["components"] = cs;
      Json per = Json::object();
      for (std::size_t v = 0; v < g.size(); ++v) {
        Json row;
        row["global"] = rounds_json(sim.ecc(v, sim.correct()));
        Json pc = Json::array();
        for (NodeSet c : comps) pc.push_back(rounds_json(sim.ecc(v, c)));
        row["components"] = pc;
        per[std::to_string(g.id(v))] = row;
      }
      j["ecc"] = per;
      if (f_.json) {
        out_ << j.dump() << "\n";
      } else {
        for (std::size_t v = 0; v < g.size(); ++v) {
          out_ << "node=" << g.id(v) << " ecc=" << rounds_text(sim.ecc(v, sim.correct()))
               << " components=";
          for (std::size_t k = 0; k < comps.size(); ++k)
            out_ << (k ? "," : "") << rounds_text(sim.ecc(v, comps[k]));
          out_ << "\n";
        }
      }
      return kOk;
    }
    const RadiusResult r = radius(g, t(g), opts_);
    if (f_.json) {
      Json j;
      j["t"] = r.t;
      j["patterns"] = r.patterns;
      j["ecc"] = ids_map(g, r.node_ecc);
      j["empty_max"] = r.empty_max;
      out_ << j.dump() << "\n";
    } else {
      for (std::size_t v = 0; v < g.size(); ++v)
        out_ << "node=" << g.id(v) << " ecc=" << r.node_ecc[v] << "\n";
    }
    return kOk;
  }

  int core_cmd() {
    const Graph g = load_graph(f_.graph);
    const CoreSequence core = core_sequence_general(g, t(g), opts_);
    if (f_.json) {
      out_ << core_to_json(core).dump() << "\n";
    } else {
      out_ << "sources=" << join(core.sources) << " ecc=";
      for (std::size_t i = 0; i < core.per_index_ecc.size(); ++i)
        out_ << (i ? "," : "") << core.per_index_ecc[i];
      out_ << " regime=" << regime_tag(core.regime) << "\n";
    }
    return kOk;
  }

  int simulate() {
    const Graph g = load_graph(f_.graph);
    if (f_.pattern.empty()) throw ParameterError("--pattern is required");
    const FailurePattern phi = load_pattern(g, f_.pattern);
    Inputs inputs;
    if (f_.inputs.empty())
      for (NodeId v : g.ids()) inputs[v] = v;
    else
      inputs = parse_inputs(f_.inputs);
    const Algorithm algo = parse_algorithm(f_.algo);
    Json j;
    ExecutionResult res;
    if (algo == Algorithm::core) {
      const int te = t(g);
      const RadiusResult rad = radius(g, te, opts_);
      const CoreSequence core = core_sequence_general(g, te, opts_);
      res = run_with_core(g, core, rad.value, inputs, phi);
      j["algorithm"] = "core";
      j["sources"] = core.sources;
    } else {
      res = run_floodall_baseline(g, inputs, phi);
      j["algorithm"] = "baseline";
    }
    j["rounds"] = res.rounds_used;
    Json dec = Json::object();
    for (const auto& [v, y] : res.outputs) dec[std::to_string(v)] = y;
    j["decisions"] = dec;
    if (f_.json) {
      out_ << j.dump() << "\n";
    } else {
      out_ << "rounds=" << res.rounds_used << "\n";
      for (const auto& [v, y] : res.outputs) out_ << "node=" << v << " decision=" << y << "\n";
    }
    return kOk;
  }

  int verify() {
    const Graph g = load_graph(f_.graph);
    const Verdict v = verify_task(g, t(g), parse_algorithm(f_.algo), parse_task(f_.task), opts_);
    Json j;
    j["pass"] = v.pass;
    j["patterns"] = v.patterns;
    j["rounds"] = v.rounds;
    if (v.core) j["sources"] = v.core->sources;
    if (v.counterexample) j["counterexample"] = counterexample_to_json(g, *v.counterexample);
    if (f_.json || !v.pass)
      out_ << j.dump() << "\n";
    else
      out_ << "pass patterns=" << v.patterns << " rounds=" << v.rounds << "\n";
    return v.pass ? kOk : kViolated;
  }

  int solvable() {
    const Graph g = load_graph(f_.graph);
    if (f_.rounds < 0) throw ParameterError("--rounds is required");
    const IFGraph ifg = build_if_graph(g, f_.rounds, pattern_class(g), opts_);
    const IFComponents comps = connected_components_if(ifg);
    const Solvability s = solvability(ifg, comps);
    Json j;
    j["solvable"] = s.solvable;
    j["round"] = f_.rounds;
    j["patterns"] = ifg.description();
    j["pattern_count"] = ifg.pattern_count();
    j["vertices"] = ifg.vertices().size();
    j["components"] = certificate_to_json(ifg, s.certificate);
    if (f_.json || !s.solvable) {
      out_ << j.dump() << "\n";
    } else {
      out_ << "solvable=true round=" << f_.rounds << " components=" << comps.members.size()
           << " dominators=";
      for (std::size_t c = 0; c < s.certificate.components.size(); ++c)
        out_ << (c ? "," : "") << *s.certificate.components[c].dominator;
      out_ << "\n";
    }
    return s.solvable ? kOk : kViolated;
  }

  int ifgraph() {
    const Graph g = load_graph(f_.graph);
    if (f_.rounds < 0) throw ParameterError("--rounds is required");
    const std::string format = !f_.format.empty() ? f_.format : f_.json ? "json" : "dot";
    const IFGraph ifg = build_if_graph(g, f_.rounds, pattern_class(g), opts_);
    const std::string text = export_if_graph(ifg, format);
    if (!f_.emit.empty()) write(f_.emit, text);
    out_ << text;
    return kOk;
  }

  int lowerbound() {
    const Graph g = load_graph(f_.graph);
    LowerBoundCertificate cert;
    try {
      cert = certify_lower_bound(g, t(g), opts_);
    } catch (const ConsistencyError& e) {
      Json j;
      j["certified"] = false;
      j["error"] = e.what();
      out_ << j.dump() << "\n";
      return kViolated;
    }
    const Json j = certificate_to_json(g, cert);
    if (!f_.emit.empty()) write(f_.emit, j.dump(2) + "\n");
    if (f_.json) {
      out_ << j.dump() << "\n";
    } else {
      out_ << "certified radius=" << cert.radius << " round=" << cert.radius - 1
           << " component=" << cert.component << " if_vertices=" << cert.if_vertices
           << " nodes=" << cert.chains.size() << "\n";
    }
    return kOk;
  }

 private:
  int t(const Graph& g) {
    if (f_.t < 0) throw ParameterError("--t is required and must be >= 0");
    return clamp_t(g, f_.t, &err_);
  }

  PatternClass pattern_class(const Graph& g) {
    if (!f_.patterns.empty()) return load_pattern_class(g, f_.patterns);
    return all_patterns(g, t(g), opts_);
  }

  void write(const std::string& path, const std::string& text) {
    std::ofstream o(path);
    if (!o) throw ParameterError(path + ": cannot write file");
    o << text;
  }

  const Flags& f_;
  std::ostream& out_;
  std::ostream& err_;
  Options opts_;
};

/// Runs one invocation; args excludes the program name.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"t-resilient radius, consensus solvability and lower-bound certificates"};
  app.name("tradius");
  app.require_subcommand(1);
  Flags f;

  auto graph = [&](CLI::App* c) { c->add_option("--graph", f.graph, "graph JSON file")->required(); };
  auto tflag = [&](CLI::App* c, bool required) {
    auto* o = c->add_option("--t", f.t, "maximum number of crash failures")->check(CLI::NonNegativeNumber);
    if (required) o->required();
  };
  auto common = [&](CLI::App* c) {
    c->add_flag("--json", f.json, "machine-readable output");
    c->add_option("--threads", f.threads, "worker threads (0 = all cores)");
  };

  auto* gen = app.add_subcommand("gen", "generate a fixture graph");
  gen->add_option("--family", f.family, "clique|cycle|path|hypercube|fig2_gadget")->required();
  gen->add_option("--n", f.n, "size parameter (dimension for hypercube)");
  gen->add_option("--emit", f.emit, "also write the graph to this file");
  common(gen);

  auto* conn = app.add_subcommand("connectivity", "vertex connectivity");
  graph(conn);
  common(conn);

  auto* rad = app.add_subcommand("radius", "radius(G, t)");
  graph(rad);
  tflag(rad, true);
  common(rad);

  auto* ecc = app.add_subcommand("ecc", "eccentricities under one pattern or over all patterns");
  graph(ecc);
  tflag(ecc, false);
  ecc->add_option("--pattern", f.pattern, "failure pattern JSON file");
  common(ecc);

  auto* core = app.add_subcommand("core", "core sequence of broadcasters");
  graph(core);
  tflag(core, true);
  common(core);

  auto* sim = app.add_subcommand("simulate", "run an algorithm under one pattern");
  graph(sim);
  tflag(sim, false);
  sim->add_option("--pattern", f.pattern, "failure pattern JSON file")->required();
  sim->add_option("--inputs", f.inputs, "id=value list, e.g. 1=10,2=20 (default: value = id)");
  sim->add_option("--algo", f.algo, "core|baseline");
  common(sim);

  auto* ver = app.add_subcommand("verify", "check an algorithm on every pattern");
  graph(ver);
  tflag(ver, true);
  ver->add_option("--task", f.task, "consensus|local");
  ver->add_option("--algo", f.algo, "core|baseline");
  common(ver);

  auto* sol = app.add_subcommand("solvable", "consensus solvability via the IF graph");
  graph(sol);
  tflag(sol, false);
  sol->add_option("--rounds", f.rounds, "number of rounds")->required()->check(CLI::NonNegativeNumber);
  sol->add_option("--patterns", f.patterns, "pattern class JSON file (default: all patterns)");
  common(sol);

  auto* ifg = app.add_subcommand("ifgraph", "export the IF graph");
  graph(ifg);
  tflag(ifg, false);
  ifg->add_option("--rounds", f.rounds, "number of rounds")->required()->check(CLI::NonNegativeNumber);
  ifg->add_option("--patterns", f.patterns, "pattern class JSON file (default: all patterns)");
  ifg->add_option("--format", f.format, "dot|json");
  ifg->add_option("--emit", f.emit, "also write the export to this file");
  common(ifg);

  auto* lb = app.add_subcommand("lowerbound", "certify the radius lower bound");
  graph(lb);
  tflag(lb, true);
  lb->add_option("--emit", f.emit, "write the certificate to this file");
  common(lb);

  std::vector<std::string> storage{"tradius"};
  storage.insert(storage.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& s : storage) argv.push_back(s.data());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  Dispatcher d(f, out, err);
  try {
    if (gen->parsed()) return d.gen();
    if (conn->parsed()) return d.connectivity_cmd();
    if (rad->parsed()) return d.radius_cmd();
    if (ecc->parsed()) return d.ecc_cmd();
    if (core->parsed()) return d.core_cmd();
    if (sim->parsed()) return d.simulate();
    if (ver->parsed()) return d.verify();
    if (sol->parsed()) return d.solvable();
    if (ifg->parsed()) return d.ifgraph();
    return d.lowerbound();
  } catch (const ConsistencyError& e) {
    Json j;
    j["error"] = e.what();
    out << j.dump() << "\n";
    return kViolated;
  } catch (const ProtocolError& e) {
    Json j;
    j["error"] = e.what();
    out << j.dump() << "\n";
    return kViolated;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
}

}  // namespace tradius::cli

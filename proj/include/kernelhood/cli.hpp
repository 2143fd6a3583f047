#ifndef KERNELHOOD_CLI_HPP
#define KERNELHOOD_CLI_HPP

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "kernelhood/digraph.hpp"
#include "kernelhood/error.hpp"
#include "kernelhood/io.hpp"
#include "kernelhood/kernel.hpp"
#include "kernelhood/random.hpp"
#include "kernelhood/truth.hpp"

namespace kernelhood {

namespace cli_detail {

using nlohmann::json;

inline json set_to_json(const VertexSet& s) { return json(s); }

inline json height_to_json(const Height& h) {
  return h.is_finite() ? json(h.value()) : json("infinite");
}

inline void print_kernel(std::ostream& out, const VertexSet& k) {
  out << "KERNEL n=" << k.size() << "\n";
  for (const auto& id : k) out << id << "\n";
}

inline void print_labeled_set(std::ostream& out, const char* label, const VertexSet& s) {
  out << label;
  if (!s.empty()) out << " " << render_set(s);
  out << "\n";
}

// Inputs shared by the truth/eval/bound family: a structure given either as
// a file or as --zmod <n>, plus a sentence file.
struct StructureArgs {
  std::string struct_path;
  std::size_t zmod = 0;
  std::string sentences_path;

  FiniteStructure load_structure() const {
    if (zmod > 0) return FiniteStructure::z_mod(zmod);
    return read_structure_file(struct_path);
  }

  std::vector<Sentence> load_sentences() const { return read_sentences_file(sentences_path); }
};

inline void add_structure_options(CLI::App* sub, StructureArgs& args) {
  auto* source = sub->add_option_group("structure source");
  source->add_option("--struct", args.struct_path, "structure file (STRUCT/ADD/MUL lines)");
  source->add_option("--zmod", args.zmod, "use built-in Z_n arithmetic")
      ->check(CLI::PositiveNumber);
  source->require_option(1);
  sub->add_option("--sentences", args.sentences_path, "sentence file, one per line")
      ->required();
}

}  // namespace cli_detail

// Runs the command line given in `args` (program name excluded). Returns
// the process exit status: 0 success, 1 domain error, 2 usage/parse error.
inline int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  using cli_detail::json;

  CLI::App app{"digraph kernels, truth classes, and the machinery connecting them"};
  app.require_subcommand(1);

  // kernel
  std::string kernel_graph;
  bool kernel_dot = false, kernel_json = false;
  auto* kernel_cmd = app.add_subcommand("kernel", "unique kernel of a finite DAG");
  kernel_cmd->add_option("graph", kernel_graph, "edge-list file")->required();
  kernel_cmd->add_flag("--dot", kernel_dot, "emit DOT with the kernel double-bordered");
  kernel_cmd->add_flag("--json", kernel_json, "JSON output");
  kernel_cmd->callback([&] {
    Digraph g = read_edge_list_file(kernel_graph);
    VertexSet k = kernel_of_well_founded(g);
    if (kernel_dot)
      out << to_dot(g, k);
    else if (kernel_json)
      out << json{{"kernel", k}, {"size", k.size()}}.dump(2) << "\n";
    else
      cli_detail::print_kernel(out, k);
  });

  // kernels
  std::string kernels_graph;
  bool kernels_json = false;
  auto* kernels_cmd = app.add_subcommand("kernels", "all kernels, by backtracking search");
  kernels_cmd->add_option("graph", kernels_graph, "edge-list file")->required();
  kernels_cmd->add_flag("--json", kernels_json, "JSON output");
  kernels_cmd->callback([&] {
    Digraph g = read_edge_list_file(kernels_graph);
    auto ks = kernel_search(g);
    if (kernels_json) {
      out << json{{"kernels", ks}, {"count", ks.size()}}.dump(2) << "\n";
    } else {
      out << "KERNELS count=" << ks.size() << "\n";
      for (const auto& k : ks) cli_detail::print_kernel(out, k);
    }
  });

  // extend
  std::string extend_graph, extend_closed, extend_kernel0;
  bool extend_json = false;
  auto* extend_cmd =
      app.add_subcommand("extend", "extend a kernel of a closed set across a well-founded complement");
  extend_cmd->add_option("graph", extend_graph, "edge-list file")->required();
  extend_cmd->add_option("--closed", extend_closed, "closed vertex set file")->required();
  extend_cmd->add_option("--kernel0", extend_kernel0, "kernel of the closed set")->required();
  extend_cmd->add_flag("--json", extend_json, "JSON output");
  extend_cmd->callback([&] {
    Digraph g = read_edge_list_file(extend_graph);
    VertexSet k = extend_kernel(g, read_vertex_set_file(extend_closed),
                                read_vertex_set_file(extend_kernel0));
    if (extend_json)
      out << json{{"kernel", k}, {"size", k.size()}}.dump(2) << "\n";
    else
      cli_detail::print_kernel(out, k);
  });

  // closure
  std::string closure_graph, closure_set;
  std::optional<std::size_t> closure_steps;
  bool closure_json = false;
  auto* closure_cmd = app.add_subcommand("closure", "closure Cl(X), or Cl_k(X) with --k");
  closure_cmd->add_option("graph", closure_graph, "edge-list file")->required();
  closure_cmd->add_option("--set", closure_set, "vertex set file")->required();
  closure_cmd->add_option("--k", closure_steps, "closure stage k");
  closure_cmd->add_flag("--json", closure_json, "JSON output");
  closure_cmd->callback([&] {
    Digraph g = read_edge_list_file(closure_graph);
    VertexSet x = read_vertex_set_file(closure_set);
    VertexSet c = closure_steps ? closure_k(g, x, *closure_steps) : closure(g, x);
    if (closure_json)
      out << json{{"closure", c}}.dump(2) << "\n";
    else
      out << render_set(c) << "\n";
  });

  // height
  std::string height_graph, height_within;
  bool height_json = false;
  auto* height_cmd = app.add_subcommand("height", "height of the (induced) digraph");
  height_cmd->add_option("graph", height_graph, "edge-list file")->required();
  height_cmd->add_option("--within", height_within, "restrict to this vertex set file");
  height_cmd->add_flag("--json", height_json, "JSON output");
  height_cmd->callback([&] {
    Digraph g = read_edge_list_file(height_graph);
    VertexSet within =
        height_within.empty() ? g.all_vertices() : read_vertex_set_file(height_within);
    Height h = height(g, within);
    if (height_json)
      out << json{{"height", cli_detail::height_to_json(h)}}.dump(2) << "\n";
    else
      out << h.str() << "\n";
  });

  // wf
  std::string wf_graph, wf_within;
  bool wf_json = false;
  auto* wf_cmd = app.add_subcommand("wf", "well-foundedness of the (induced) digraph");
  wf_cmd->add_option("graph", wf_graph, "edge-list file")->required();
  wf_cmd->add_option("--within", wf_within, "restrict to this vertex set file");
  wf_cmd->add_flag("--json", wf_json, "JSON output");
  wf_cmd->callback([&] {
    Digraph g = read_edge_list_file(wf_graph);
    VertexSet within = wf_within.empty() ? g.all_vertices() : read_vertex_set_file(wf_within);
    bool wf = is_well_founded(g, within);
    if (wf_json)
      out << json{{"well_founded", wf}}.dump(2) << "\n";
    else
      out << (wf ? "true" : "false") << "\n";
  });

  // lfh
  std::string lfh_graph;
  std::size_t lfh_m = 0;
  bool lfh_json = false;
  auto* lfh_cmd =
      app.add_subcommand("lfh", "local-finite-height witness k(m), brute force over |F| <= m");
  lfh_cmd->add_option("graph", lfh_graph, "edge-list file")->required();
  lfh_cmd->add_option("--m", lfh_m, "seed-set cardinality bound")->required();
  lfh_cmd->add_flag("--json", lfh_json, "JSON output");
  lfh_cmd->callback([&] {
    Digraph g = read_edge_list_file(lfh_graph);
    Height h = lfh_witness(g, lfh_m);
    if (lfh_json)
      out << json{{"m", lfh_m}, {"lfh", cli_detail::height_to_json(h)}}.dump(2) << "\n";
    else
      out << h.str() << "\n";
  });

  // locality
  std::string loc_graph, loc_u, loc_f;
  std::size_t loc_k = 0;
  bool loc_json = false;
  auto* loc_cmd = app.add_subcommand("locality", "evaluate the locality sentence sigma_{F,k}");
  loc_cmd->add_option("graph", loc_graph, "edge-list file")->required();
  loc_cmd->add_option("--u", loc_u, "candidate set U file")->required();
  loc_cmd->add_option("--f", loc_f, "seed set F file")->required();
  loc_cmd->add_option("--k", loc_k, "closure stage k")->required();
  loc_cmd->add_flag("--json", loc_json, "JSON output");
  loc_cmd->callback([&] {
    Digraph g = read_edge_list_file(loc_graph);
    bool ok = check_locality(g, read_vertex_set_file(loc_u), read_vertex_set_file(loc_f), loc_k);
    if (loc_json)
      out << json{{"holds", ok}}.dump(2) << "\n";
    else
      out << (ok ? "true" : "false") << "\n";
  });

  // chain
  std::string chain_graph, chain_frontiers;
  bool chain_json = false;
  auto* chain_cmd =
      app.add_subcommand("chain", "coherent kernel chain over closures of growing frontiers");
  chain_cmd->add_option("graph", chain_graph, "edge-list file")->required();
  chain_cmd->add_option("--frontiers", chain_frontiers, "frontier file, one 'F <ids...>' per line")
      ->required();
  chain_cmd->add_flag("--json", chain_json, "JSON output");
  chain_cmd->callback([&] {
    Digraph g = read_edge_list_file(chain_graph);
    auto steps = coherent_kernel_chain(g, read_frontiers_file(chain_frontiers));
    if (chain_json) {
      json arr = json::array();
      for (const auto& s : steps)
        arr.push_back({{"stage", s.stage},
                       {"frontier", s.frontier},
                       {"closed", s.closed},
                       {"kernel", s.kernel}});
      out << json{{"steps", arr}}.dump(2) << "\n";
    } else {
      for (const auto& s : steps) {
        out << "STEP " << s.stage << "\n";
        cli_detail::print_labeled_set(out, "FRONTIER", s.frontier);
        cli_detail::print_labeled_set(out, "CLOSED", s.closed);
        cli_detail::print_kernel(out, s.kernel);
      }
    }
  });

  // truth
  cli_detail::StructureArgs truth_args;
  bool truth_json = false;
  auto* truth_cmd =
      app.add_subcommand("truth", "truth class of the sentence digraph grown from the seeds");
  cli_detail::add_structure_options(truth_cmd, truth_args);
  truth_cmd->add_flag("--json", truth_json, "JSON output");
  truth_cmd->callback([&] {
    TruthClass tc = truth_class(truth_args.load_structure(), truth_args.load_sentences());
    if (truth_json) {
      json arr = json::array();
      for (const auto& id : tc.universe.graph.vertex_ids())
        arr.push_back({{"sentence", id}, {"in_class", tc.members.count(id) != 0}});
      out << json{{"class", arr}}.dump(2) << "\n";
    } else {
      for (const auto& id : tc.universe.graph.vertex_ids())
        out << (tc.members.count(id) ? "T " : "F ") << id << "\n";
    }
  });

  // truth-dag
  cli_detail::StructureArgs tdag_args;
  auto* tdag_cmd = app.add_subcommand("truth-dag", "DOT of the sentence digraph fragment");
  cli_detail::add_structure_options(tdag_cmd, tdag_args);
  tdag_cmd->callback([&] {
    TruthClass tc = truth_class(tdag_args.load_structure(), tdag_args.load_sentences());
    out << to_dot(tc.universe.graph, tc.members);
  });

  // eval
  cli_detail::StructureArgs eval_args;
  bool eval_json = false;
  auto* eval_cmd = app.add_subcommand("eval", "Tarskian evaluation of each sentence");
  cli_detail::add_structure_options(eval_cmd, eval_args);
  eval_cmd->add_flag("--json", eval_json, "JSON output");
  eval_cmd->callback([&] {
    FiniteStructure m = eval_args.load_structure();
    auto sentences = eval_args.load_sentences();
    if (eval_json) {
      json arr = json::array();
      for (const Sentence& s : sentences)
        arr.push_back({{"sentence", s.text()}, {"value", tarski_eval(m, s)}});
      out << arr.dump(2) << "\n";
    } else {
      for (const Sentence& s : sentences)
        out << (tarski_eval(m, s) ? "T " : "F ") << s.text() << "\n";
    }
  });

  // bound
  cli_detail::StructureArgs bound_args;
  std::size_t bound_m = 0;
  bool bound_json = false;
  bool bound_failed = false;
  auto* bound_cmd =
      app.add_subcommand("bound", "check Ht(Cl_m(F)) <= (2^(m+1)-1)|F| on the sentence digraph");
  cli_detail::add_structure_options(bound_cmd, bound_args);
  bound_cmd->add_option("--m", bound_m, "closure stage m")->required();
  bound_cmd->add_flag("--json", bound_json, "JSON output");
  bound_cmd->callback([&] {
    HeightBoundReport r =
        height_bound_check(bound_args.load_structure(), bound_args.load_sentences(), bound_m);
    if (bound_json) {
      out << json{{"m", r.m},
                  {"seeds", r.seed_count},
                  {"height", cli_detail::height_to_json(r.height)},
                  {"bound", r.bound},
                  {"holds", r.holds}}
                 .dump(2)
          << "\n";
    } else {
      out << "height=" << r.height.str() << " bound=" << r.bound << " m=" << r.m
          << " seeds=" << r.seed_count << " holds=" << (r.holds ? "true" : "false") << "\n";
    }
    bound_failed = !r.holds;
    if (bound_failed)
      err << "ERR:bound-violated: height " << r.height.str() << " exceeds bound " << r.bound
          << "\n";
  });

  // gen
  std::string gen_kind;
  std::size_t gen_n = 0;
  double gen_edge_prob = 0.3;
  std::optional<std::uint64_t> gen_seed;
  auto* gen_cmd = app.add_subcommand("gen", "generate a random digraph as an edge list");
  gen_cmd->add_option("kind", gen_kind, "dag or digraph")
      ->required()
      ->check(CLI::IsMember({"dag", "digraph"}));
  gen_cmd->add_option("--n", gen_n, "vertex count")->required();
  gen_cmd->add_option("--edge-prob", gen_edge_prob, "edge probability (default 0.3)");
  gen_cmd->add_option("--seed", gen_seed, "seed (default: KERNELHOOD_SEED or 1)");
  gen_cmd->callback([&] {
    Rng rng(gen_seed ? *gen_seed : seed_from_env(1));
    Digraph g = gen_kind == "dag" ? random_dag(rng, gen_n, gen_edge_prob)
                                  : random_digraph(rng, gen_n, gen_edge_prob);
    out << render_edge_list(g);
  });

  try {
    std::reverse(args.begin(), args.end());  // CLI11 wants reversed argv
    app.parse(std::move(args));
    return bound_failed ? 1 : 0;
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  } catch (const kernelhood::ParseError& e) {
    err << "ERR:" << e.code() << ": " << e.what() << "\n";
    return 2;
  } catch (const DomainError& e) {
    err << "ERR:" << e.code() << ": " << e.what() << "\n";
    return 1;
  } catch (const Error& e) {
    err << "ERR:" << e.code() << ": " << e.what() << "\n";
    return 2;
  }
}

}  // namespace kernelhood

#endif  // KERNELHOOD_CLI_HPP

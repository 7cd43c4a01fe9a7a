#include <filesystem>
#include <fstream>
#include <iostream>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"
#include "sst/generators.hpp"
#include "sst/io.hpp"
#include "sst/predictor.hpp"
#include "sst/version.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string csv_escape(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += "\"\"";
    else out += c;
  }
  out += '"';
  return out;
}

json report_to_json(const sst::EvaluationReport& rep, const json& config_echo) {
  json j;
  j["dataset"] = rep.dataset;
  j["mode"] = rep.mode;
  j["k"] = rep.k;
  j["seed"] = rep.seed;
  j["auc"] = rep.auc;
  if (rep.aupr3) j["aupr3"] = *rep.aupr3;
  else j["aupr3"] = nullptr;
  j["n_pos"] = rep.n_pos;
  j["n_neg"] = rep.n_neg;
  j["aupr3_pos"] = rep.aupr3_pos;
  j["aupr3_neg"] = rep.aupr3_neg;
  j["chosen_C"] = rep.chosen_C;
  j["runtime_s"] = rep.runtime_s;
  j["version"] = sst::kVersion;
  j["config"] = config_echo;
  return j;
}

void write_interpretation_csv(const fs::path& path,
                              const std::vector<sst::InterpretationRow>& rows) {
  std::ofstream out(path);
  out << "rank,label_id,weight,pos_count,neg_count,label,description\n";
  for (const auto& r : rows)
    out << r.rank << ',' << r.label_id << ',' << r.weight << ',' << r.pos_count << ','
        << r.neg_count << ',' << csv_escape(r.label) << ',' << csv_escape(r.description)
        << '\n';
}

void write_prcurve_csv(const fs::path& path, const sst::PrCurve& pr) {
  std::ofstream out(path);
  out << "recall,precision\n";
  for (const auto& p : pr.points) out << p.recall << ',' << p.precision << '\n';
}

void write_dot_files(const fs::path& dir, const std::vector<sst::InterpretationRow>& rows,
                     int top_n) {
  if (top_n <= 0) return;
  fs::create_directories(dir);
  for (const auto& r : rows) {
    if (r.rank > top_n) break;
    std::ofstream out(dir / ("sst_" + std::to_string(r.rank) + ".dot"));
    out << sst::label_to_dot(r.label, "sst_rank_" + std::to_string(r.rank));
  }
}

void save_model(const fs::path& path, const sst::TrainedPredictor& p,
                const sst::EvaluationReport& rep) {
  json j;
  j["weights"] = p.model.weights;
  j["bias"] = p.model.bias;
  j["mean"] = p.model.mean;
  j["inv_std"] = p.model.inv_std;
  j["C"] = p.model.C;
  j["epochs"] = p.model.epochs;
  j["svm_seed"] = p.model.seed;
  j["labels"] = p.labels_by_id;
  j["pos_counts"] = p.pos_counts;
  j["neg_counts"] = p.neg_counts;
  j["dataset"] = rep.dataset;
  j["mode"] = rep.mode;
  j["k"] = rep.k;
  std::ofstream out(path);
  out << j.dump(2) << '\n';
}

sst::TrainedPredictor load_model(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open model file " + path.string());
  json j = json::parse(in);
  sst::TrainedPredictor p;
  p.model.weights = j.at("weights").get<std::vector<double>>();
  p.model.bias = j.at("bias").get<double>();
  p.model.mean = j.at("mean").get<std::vector<double>>();
  p.model.inv_std = j.at("inv_std").get<std::vector<double>>();
  p.model.C = j.at("C").get<double>();
  p.model.epochs = j.at("epochs").get<int>();
  p.model.seed = j.at("svm_seed").get<std::uint64_t>();
  p.labels_by_id = j.at("labels").get<std::vector<std::string>>();
  p.pos_counts = j.at("pos_counts").get<std::vector<long>>();
  p.neg_counts = j.at("neg_counts").get<std::vector<long>>();
  return p;
}

void print_summary(const sst::EvaluationReport& rep) {
  std::cout << rep.dataset << " (" << rep.mode << ", k=" << rep.k << ", seed=" << rep.seed
            << "): AUC=" << rep.auc;
  if (rep.aupr3) std::cout << " AUPR3=" << *rep.aupr3;
  std::cout << " [pos=" << rep.n_pos << " neg=" << rep.n_neg << ", " << rep.runtime_s
            << "s]\n";
}

sst::LoadedGraph load_graph_arg(const std::string& path, bool directed) {
  if (path == "-") return sst::parse_static(std::cin, directed);
  return sst::load_static(path, directed);
}

sst::LoadedStream load_stream_arg(const std::string& path, bool directed) {
  if (path == "-") return sst::parse_temporal(std::cin, directed);
  return sst::load_temporal(path, directed);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Subgraph-to-subgraph transition toolkit"};
  app.set_config("--config", "", "key=value config file; flags override");
  app.require_subcommand(1);

  std::string graph_path, out_dir = "sst_out", dataset_name, model_path;
  bool directed = false, undirected = false, no_aupr3 = false, tune_C = false;
  int k = 3, threads = 1, tau = 10, base_buckets = 8, auc_neg_factor = 10, top_dot = 12;
  int ba_n = 1000, ba_m = 2;
  double alpha = 10.0, C = 1.0;
  int epochs = 50;
  std::uint64_t seed = 1;
  std::string add_edge_u, add_edge_v, del_edge_u, del_edge_v;
  std::vector<std::string> add_node_args, del_node_args;
  std::string baseline_mode = "static";

  auto add_common = [&](CLI::App* cmd, bool temporal) {
    cmd->add_option("--graph", graph_path, "edge list file, or - for stdin")->required();
    cmd->add_flag("--directed", directed, "treat the graph as directed");
    cmd->add_flag("--undirected", undirected, "treat the graph as undirected");
    cmd->add_option("--k", k, "SST size (2..9)");
    cmd->add_option("--seed", seed, "run seed");
    cmd->add_option("--C", C, "SVM regularization");
    cmd->add_option("--epochs", epochs, "SVM epochs");
    cmd->add_option("--threads", threads, "worker threads (0 = hardware)");
    cmd->add_option("--out", out_dir, "output directory");
    cmd->add_option("--name", dataset_name, "dataset name for reports");
    cmd->add_option("--auc-neg-factor", auc_neg_factor,
                    "sampled negatives per positive for AUC");
    cmd->add_flag("--no-aupr3", no_aupr3, "skip the AUPR3 candidate sweep");
    cmd->add_option("--top-dot", top_dot, "export DOT files for the top-N SSTs");
    if (temporal) {
      cmd->add_option("--tau", tau, "bucket count");
      cmd->add_option("--base-buckets", base_buckets, "training base graph buckets");
    } else {
      cmd->add_option("--alpha", alpha, "non-edge oversampling factor");
      cmd->add_flag("--tune-C", tune_C, "pick C on the validation split");
    }
  };

  CLI::App* cmd_static = app.add_subcommand("static-lp", "static link prediction");
  add_common(cmd_static, false);
  CLI::App* cmd_temporal = app.add_subcommand("temporal-lp", "temporal link prediction");
  add_common(cmd_temporal, true);

  CLI::App* cmd_interpret =
      app.add_subcommand("interpret", "re-emit the interpretation report from a saved model");
  cmd_interpret->add_option("--model", model_path, "model.json from a previous run")->required();
  cmd_interpret->add_option("--out", out_dir, "output directory");
  cmd_interpret->add_option("--top-dot", top_dot, "export DOT files for the top-N SSTs");

  CLI::App* cmd_ba = app.add_subcommand("generate-ba", "preferential attachment stream");
  std::string ba_out = "-";
  cmd_ba->add_option("--n", ba_n, "node count")->required();
  cmd_ba->add_option("--m", ba_m, "edges per arriving node")->required();
  cmd_ba->add_option("--seed", seed, "generator seed");
  cmd_ba->add_option("--out", ba_out, "output file, - for stdout");

  CLI::App* cmd_enum = app.add_subcommand("enumerate", "SST vector for one change");
  cmd_enum->add_option("--graph", graph_path, "edge list file, or - for stdin")->required();
  cmd_enum->add_flag("--directed", directed, "treat the graph as directed");
  cmd_enum->add_option("--k", k, "SST size (2..9)");
  CLI::Option* opt_add_edge =
      cmd_enum->add_option("--add-edge", [&](const std::vector<std::string>& v) {
        add_edge_u = v[0];
        add_edge_v = v[1];
        return true;
      }, "add edge: SRC DST")->expected(2);
  CLI::Option* opt_del_edge =
      cmd_enum->add_option("--delete-edge", [&](const std::vector<std::string>& v) {
        del_edge_u = v[0];
        del_edge_v = v[1];
        return true;
      }, "delete edge: SRC DST")->expected(2);
  CLI::Option* opt_add_node = cmd_enum->add_option(
      "--add-node", add_node_args, "add node: NEW NBR [NBR...] (edges NEW->NBR)");
  opt_add_node->expected(-2);
  CLI::Option* opt_del_node =
      cmd_enum->add_option("--delete-node", del_node_args, "delete node: NODE");
  opt_del_node->expected(1);
  opt_add_edge->excludes(opt_del_edge)->excludes(opt_add_node)->excludes(opt_del_node);

  CLI::App* cmd_base = app.add_subcommand("eval-baselines",
                                          "random + common-neighbors on the SST candidates");
  add_common(cmd_base, true);
  cmd_base->add_option("--mode", baseline_mode, "static or temporal")
      ->check(CLI::IsMember({"static", "temporal"}));
  cmd_base->add_option("--alpha", alpha, "non-edge oversampling factor");

  try {
    app.parse(argc, argv);

    if (threads <= 0) threads = static_cast<int>(std::thread::hardware_concurrency());
    if (threads <= 0) threads = 1;

    if (cmd_static->parsed()) {
      const bool dir = directed && !undirected;
      auto loaded = load_graph_arg(graph_path, dir);
      if (dataset_name.empty()) dataset_name = graph_path;
      sst::StaticTrainConfig cfg;
      cfg.alpha = alpha;
      cfg.k = k;
      cfg.seed = seed;
      cfg.C = C;
      cfg.epochs = epochs;
      cfg.tune_C = tune_C;
      cfg.threads = threads;
      cfg.auc_negative_factor = auc_neg_factor;
      cfg.compute_aupr3 = !no_aupr3;
      auto result = sst::run_static_lp(loaded.graph, cfg, dataset_name);

      fs::create_directories(out_dir);
      json echo = {{"graph", graph_path},    {"directed", dir},
                   {"k", k},                 {"alpha", alpha},
                   {"seed", seed},           {"C", C},
                   {"epochs", epochs},       {"tune_C", tune_C},
                   {"threads", threads},     {"auc_neg_factor", auc_neg_factor},
                   {"compute_aupr3", !no_aupr3}, {"mode", "static"}};
      std::ofstream rj(fs::path(out_dir) / "report.json");
      rj << report_to_json(result.report, echo).dump(2) << '\n';
      write_interpretation_csv(fs::path(out_dir) / "interpretation.csv",
                               result.report.interpretation);
      write_prcurve_csv(fs::path(out_dir) / "prcurve.csv", result.report.pr_curve);
      write_dot_files(fs::path(out_dir) / "ssts", result.report.interpretation, top_dot);
      save_model(fs::path(out_dir) / "model.json", result.predictor, result.report);
      print_summary(result.report);
    } else if (cmd_temporal->parsed()) {
      const bool dir = !undirected;  // temporal streams default to directed
      auto loaded = load_stream_arg(graph_path, dir);
      if (dataset_name.empty()) dataset_name = graph_path;
      sst::TemporalTrainConfig cfg;
      cfg.tau = tau;
      cfg.base_buckets = base_buckets;
      cfg.k = k;
      cfg.seed = seed;
      cfg.C = C;
      cfg.epochs = epochs;
      cfg.threads = threads;
      cfg.auc_negative_factor = auc_neg_factor;
      cfg.compute_aupr3 = !no_aupr3;
      auto result = sst::run_temporal_lp(loaded.stream, cfg, dataset_name);

      fs::create_directories(out_dir);
      json echo = {{"graph", graph_path},  {"directed", dir},
                   {"k", k},               {"tau", tau},
                   {"base_buckets", base_buckets}, {"seed", seed},
                   {"C", C},               {"epochs", epochs},
                   {"threads", threads},   {"auc_neg_factor", auc_neg_factor},
                   {"compute_aupr3", !no_aupr3}, {"mode", "temporal"}};
      std::ofstream rj(fs::path(out_dir) / "report.json");
      rj << report_to_json(result.report, echo).dump(2) << '\n';
      write_interpretation_csv(fs::path(out_dir) / "interpretation.csv",
                               result.report.interpretation);
      write_prcurve_csv(fs::path(out_dir) / "prcurve.csv", result.report.pr_curve);
      write_dot_files(fs::path(out_dir) / "ssts", result.report.interpretation, top_dot);
      save_model(fs::path(out_dir) / "model.json", result.predictor, result.report);
      print_summary(result.report);
    } else if (cmd_interpret->parsed()) {
      sst::TrainedPredictor p = load_model(model_path);
      auto rows = sst::interpret(p);
      fs::create_directories(out_dir);
      write_interpretation_csv(fs::path(out_dir) / "interpretation.csv", rows);
      write_dot_files(fs::path(out_dir) / "ssts", rows, top_dot);
      std::cout << "wrote " << rows.size() << " interpretation rows to " << out_dir << "\n";
    } else if (cmd_ba->parsed()) {
      auto stream = sst::barabasi_albert_stream(ba_n, ba_m, seed);
      if (ba_out == "-") {
        sst::write_temporal(std::cout, stream);
      } else {
        std::ofstream out(ba_out);
        sst::write_temporal(out, stream);
      }
    } else if (cmd_enum->parsed()) {
      auto loaded = load_graph_arg(graph_path, directed);
      auto id_of = [&](const std::string& label) -> sst::NodeId {
        for (std::size_t i = 0; i < loaded.node_labels.size(); ++i)
          if (loaded.node_labels[i] == label) return static_cast<sst::NodeId>(i);
        throw std::invalid_argument("unknown node label: " + label);
      };
      sst::GraphChange change = [&] {
        if (!add_edge_u.empty())
          return sst::GraphChange::edge_addition(id_of(add_edge_u), id_of(add_edge_v));
        if (!del_edge_u.empty())
          return sst::GraphChange::edge_deletion(id_of(del_edge_u), id_of(del_edge_v));
        if (!add_node_args.empty()) {
          const sst::NodeId fresh = loaded.graph.node_table_size();
          std::vector<std::pair<sst::NodeId, sst::NodeId>> edges;
          for (std::size_t i = 1; i < add_node_args.size(); ++i)
            edges.emplace_back(fresh, id_of(add_node_args[i]));
          return sst::GraphChange::node_addition(fresh, std::move(edges));
        }
        if (!del_node_args.empty())
          return sst::GraphChange::node_deletion(id_of(del_node_args[0]));
        throw std::invalid_argument("one of --add-edge/--delete-edge/--add-node/--delete-node required");
      }();

      sst::CounterConfig ccfg;
      ccfg.k = k;
      sst::LabelRegistry registry;
      sst::SstVector vec = sst::count_transitions(loaded.graph, change, ccfg, registry);
      json j;
      j["change"] = {{"kind", sst::change_kind_name(change.kind)}};
      if (change.kind == sst::ChangeKind::EdgeAddition ||
          change.kind == sst::ChangeKind::EdgeDeletion) {
        j["change"]["u"] = change.u;
        j["change"]["v"] = change.v;
      } else {
        j["change"]["node"] = change.node;
      }
      j["k"] = k;
      j["total_contexts"] = vec.total_contexts;
      j["entries"] = json::array();
      for (const auto& e : vec.entries)
        j["entries"].push_back({{"label_id", e.label_id},
                                {"H", registry.label_string(e.label_id)},
                                {"count", e.count}});
      std::cout << j.dump(2) << '\n';
    } else if (cmd_base->parsed()) {
      if (dataset_name.empty()) dataset_name = graph_path;
      sst::BaselineReports reports;
      json echo = {{"graph", graph_path}, {"seed", seed}, {"mode", baseline_mode}};
      if (baseline_mode == "static") {
        const bool dir = directed && !undirected;
        auto loaded = load_graph_arg(graph_path, dir);
        sst::StaticTrainConfig cfg;
        cfg.alpha = alpha;
        cfg.k = k;
        cfg.seed = seed;
        cfg.threads = threads;
        cfg.auc_negative_factor = auc_neg_factor;
        cfg.compute_aupr3 = !no_aupr3;
        reports = sst::eval_static_baselines(loaded.graph, cfg, dataset_name);
      } else {
        const bool dir = !undirected;
        auto loaded = load_stream_arg(graph_path, dir);
        sst::TemporalTrainConfig cfg;
        cfg.tau = tau;
        cfg.base_buckets = base_buckets;
        cfg.k = k;
        cfg.seed = seed;
        cfg.threads = threads;
        cfg.auc_negative_factor = auc_neg_factor;
        cfg.compute_aupr3 = !no_aupr3;
        reports = sst::eval_temporal_baselines(loaded.stream, cfg, dataset_name);
      }
      fs::create_directories(out_dir);
      std::ofstream r1(fs::path(out_dir) / "report_random.json");
      r1 << report_to_json(reports.random, echo).dump(2) << '\n';
      std::ofstream r2(fs::path(out_dir) / "report_common_neighbors.json");
      r2 << report_to_json(reports.common_neighbors, echo).dump(2) << '\n';
      print_summary(reports.random);
      print_summary(reports.common_neighbors);
    }
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    json err = {{"error", e.what()}};
    std::cerr << err.dump() << '\n';
    return 1;
  }
  return 0;
}

#include "commands.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <ostream>
#include <tuple>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <fmt/ostream.h>

#include "convgraph/graphs.hpp"
#include "csv.hpp"
#include "parallel.hpp"

namespace convgraph::cli {

namespace fs = std::filesystem;

namespace {

fs::path prepare_out_dir(const RunConfig& config) {
  std::error_code ec;
  fs::create_directories(config.out_dir, ec);
  if (ec || !fs::is_directory(config.out_dir)) {
    throw IoError("cannot create output directory " + config.out_dir.string());
  }
  return config.out_dir;
}

std::optional<double> lower_median(std::vector<double> values) {
  if (values.empty()) return std::nullopt;
  const std::size_t k = (values.size() + 1) / 2 - 1;
  std::nth_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(k), values.end());
  return values[k];
}

std::uint64_t parse_u64(const std::string& text, const fs::path& path, std::size_t line) {
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (text.empty() || ec != std::errc() || ptr != text.data() + text.size()) {
    throw IoError(fmt::format("{}:{}: expected a non-negative integer, found '{}'", path.string(),
                              line, text));
  }
  return v;
}

std::vector<MotifCensus> census_vectors(const std::vector<CensusRow>& rows) {
  std::vector<MotifCensus> out;
  out.reserve(rows.size());
  for (const CensusRow& r : rows) out.push_back(r.census);
  return out;
}

}  // namespace

LoadedCorpus load_corpus(const RunConfig& config, std::ostream& diag) {
  if (config.inputs.empty()) throw ConfigError("no input corpus given");
  LoadedCorpus corpus;
  std::vector<ThreadRecord> all;
  for (const fs::path& path : config.inputs) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot read " + path.string());
    ParseResult parsed = parse_corpus(in);
    for (const CorpusIssue& issue : parsed.issues) {
      fmt::print(diag, "{}: {}\n", path.string(), issue.message);
    }
    corpus.parse_errors += parsed.issues.size();
    std::move(parsed.threads.begin(), parsed.threads.end(), std::back_inserter(all));
  }
  if (corpus.parse_errors > 0) {
    fmt::print(diag, "{} corpus line(s) skipped due to errors\n", corpus.parse_errors);
  }

  corpus.threads = filter_corpus(all, config.filter);
  corpus.filtered_out = all.size() - corpus.threads.size();
  if (corpus.filtered_out > 0) {
    fmt::print(diag, "{} thread(s) removed by the size/deleted-root filter\n", corpus.filtered_out);
  }
  if (corpus.threads.empty()) fmt::print(diag, "warning: no threads left after filtering\n");
  return corpus;
}

std::vector<std::string> ecdf_file_names() {
  return {"ecdf_responsiveness_median_s.csv", "ecdf_reciprocity.csv", "ecdf_op_betweenness.csv",
          "ecdf_branching_factor.csv"};
}

void cmd_macro(const RunConfig& config, std::ostream& diag) {
  const LoadedCorpus corpus = load_corpus(config, diag);
  const fs::path out = prepare_out_dir(config);

  const auto records = parallel_map(corpus.threads.size(), config.jobs, [&](std::size_t i) {
    return compute_macro(corpus.threads[i], config.branching_mode);
  });

  CsvWriter csv(out / kMacroFile);
  csv.row({"thread_id", "n_posts", "n_users", "responsiveness_median_s", "reciprocity",
           "op_betweenness", "branching_factor"});
  std::array<std::vector<double>, 4> samples;
  for (const MacroRecord& r : records) {
    csv.row({r.thread_id, std::to_string(r.n_posts), std::to_string(r.n_users),
             format_real(r.responsiveness_median), format_real(r.reciprocity),
             format_real(r.op_betweenness), format_real(r.branching_factor)});
    if (r.responsiveness_median) samples[0].push_back(*r.responsiveness_median);
    samples[1].push_back(r.reciprocity);
    samples[2].push_back(r.op_betweenness);
    if (r.branching_factor) samples[3].push_back(*r.branching_factor);
  }
  csv.close();

  const auto names = ecdf_file_names();
  for (std::size_t m = 0; m < samples.size(); ++m) {
    CsvWriter e(out / names[m]);
    e.row({"value", "cum_fraction"});
    if (!samples[m].empty()) {
      const Ecdf cdf(std::move(samples[m]));
      for (std::size_t i = 0; i < cdf.size(); ++i) {
        e.row({format_real(cdf.values()[i]), format_real(cdf.fractions()[i])});
      }
    }
    e.close();
  }
}

std::vector<std::string> census_header() {
  std::vector<std::string> h = {"thread_id", "source", "n_users", "bin"};
  for (const AnchoredTriadClass& c : class_table().classes()) h.push_back(c.name);
  return h;
}

void cmd_census(const RunConfig& config, std::ostream& diag) {
  const LoadedCorpus corpus = load_corpus(config, diag);
  const fs::path out = prepare_out_dir(config);
  const ClassTable& table = class_table();

  const auto censuses = parallel_map(corpus.threads.size(), config.jobs, [&](std::size_t i) {
    return census(build_user_graph(corpus.threads[i]), table, config.census_mode);
  });

  CsvWriter csv(out / kCensusFile);
  csv.row(census_header());
  for (std::size_t i = 0; i < censuses.size(); ++i) {
    const MotifCensus& c = censuses[i];
    const auto bin = config.bins.find(c.n_users);
    std::vector<std::string> row = {corpus.threads[i].thread_id(),
                                    std::string(to_string(corpus.threads[i].source())),
                                    std::to_string(c.n_users),
                                    bin ? config.bins.ranges()[*bin].label() : std::string()};
    for (std::uint64_t count : c.counts) row.push_back(std::to_string(count));
    csv.row(row);
  }
  csv.close();
}

std::vector<CensusRow> read_census_csv(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read " + path.string());

  const std::vector<std::string> expected = census_header();
  std::string line;
  if (!std::getline(in, line)) throw IoError(path.string() + ": missing header");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  const std::vector<std::string> header = split_csv_line(line);
  for (std::size_t i = 0; i < std::max(header.size(), expected.size()); ++i) {
    if (i >= header.size()) {
      throw IoError(fmt::format("{}: missing column '{}' (position {})", path.string(),
                                expected[i], i + 1));
    }
    if (i >= expected.size()) {
      throw IoError(fmt::format("{}: unexpected column '{}' (position {})", path.string(),
                                header[i], i + 1));
    }
    if (header[i] != expected[i]) {
      throw IoError(fmt::format("{}: column {} is '{}', expected '{}'", path.string(), i + 1,
                                header[i], expected[i]));
    }
  }

  std::vector<CensusRow> rows;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> f = split_csv_line(line);
    if (f.size() != expected.size()) {
      throw IoError(fmt::format("{}:{}: expected {} fields, found {}", path.string(), line_no,
                                expected.size(), f.size()));
    }
    CensusRow row;
    row.thread_id = f[0];
    row.source = f[1];
    row.census.n_users = static_cast<std::size_t>(parse_u64(f[2], path, line_no));
    row.bin = f[3];
    for (std::size_t c = 0; c < kClassCount; ++c) {
      row.census.counts[c] = parse_u64(f[4 + c], path, line_no);
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

void cmd_compare(const fs::path& focus_census, const fs::path& baseline_census,
                 const RunConfig& config, std::ostream& diag) {
  const auto focus_rows = read_census_csv(focus_census);
  const auto baseline_rows = read_census_csv(baseline_census);
  const fs::path out = prepare_out_dir(config);

  const auto focus = census_vectors(focus_rows);
  const auto baseline = census_vectors(baseline_rows);
  const BinnedGroups focus_bins = assign_bins(focus, config.bins);
  const BinnedGroups baseline_bins = assign_bins(baseline, config.bins);
  if (focus_bins.unbinned + baseline_bins.unbinned > 0) {
    fmt::print(diag, "{} focus and {} baseline graph(s) fall outside every bin\n",
               focus_bins.unbinned, baseline_bins.unbinned);
  }

  ZReport report = z_scores(focus_bins, fit_null_model(baseline_bins));
  classify_expression(report, config.rarity_threshold);

  const ClassTable& table = class_table();
  CsvWriter csv(out / kCompareFile);
  csv.row({"bin", "class", "M", "mu_null", "sigma_null", "se_null", "N", "mean_focus",
           "sigma_focus", "se_focus", "z", "label", "reason"});
  for (const ZCell& cell : report.cells) {
    auto when = [](bool present, double v) { return present ? format_real(v) : std::string(); };
    csv.row({report.spec.ranges()[cell.bin].label(), table.at(cell.cls).name,
             std::to_string(cell.baseline_graphs), when(cell.has_baseline(), cell.mu_null),
             when(cell.has_baseline(), cell.sigma_null), when(cell.has_baseline(), cell.se_null),
             std::to_string(cell.focus_graphs), when(cell.has_focus(), cell.mean_focus),
             when(cell.has_focus(), cell.sigma_focus), when(cell.has_focus(), cell.se_focus),
             format_real(cell.z), cell.label ? std::string(to_string(*cell.label)) : std::string(),
             cell.reason});
  }
  csv.close();

  CsvWriter summary(out / kCompareSummaryFile);
  summary.row({"class", "label", "max_mean", "bins_over", "bins_under"});
  for (const ClassExpression& s : report.summary) {
    summary.row({table.at(s.cls).name, s.label(), format_real(s.max_mean),
                 std::to_string(s.bins_over), std::to_string(s.bins_under)});
  }
  summary.close();
}

void cmd_timing(const RunConfig& config, std::string_view class_name, std::ostream& diag) {
  const ClassTable& table = class_table();
  const auto cls = table.find(class_name);
  if (!cls) throw ConfigError("unknown class '" + std::string(class_name) + "'");
  if (table.at(*cls).edge_free()) {
    throw ConfigError("edge-free class '" + std::string(class_name) + "' has no completion time");
  }

  const LoadedCorpus corpus = load_corpus(config, diag);
  const fs::path out = prepare_out_dir(config);

  struct Instances {
    std::vector<std::pair<std::string, std::string>> users;
    std::vector<double> fractions;
  };
  const auto per_thread = parallel_map(corpus.threads.size(), config.jobs, [&](std::size_t i) {
    const ThreadRecord& thread = corpus.threads[i];
    const UserGraph g = build_user_graph(thread);
    const Lifetime life = thread_lifetime(thread);
    Instances inst;
    for (auto [v, w] : motif_instances(g, *cls, table)) inst.users.emplace_back(g.name(v), g.name(w));
    inst.fractions = completion_fractions(g, *cls, life.start, life.end, table);
    return inst;
  });

  CsvWriter csv(out / kTimingFile);
  csv.row({"thread_id", "user_v", "user_w", "completion_fraction"});
  std::vector<double> all;
  for (std::size_t i = 0; i < per_thread.size(); ++i) {
    const Instances& inst = per_thread[i];
    for (std::size_t k = 0; k < inst.fractions.size(); ++k) {
      csv.row({corpus.threads[i].thread_id(), inst.users[k].first, inst.users[k].second,
               format_real(inst.fractions[k])});
      all.push_back(inst.fractions[k]);
    }
  }
  csv.row({"MEDIAN", "", "", format_real(lower_median(std::move(all)))});
  csv.close();
}

void cmd_degrees(const RunConfig& config, std::ostream& diag) {
  const LoadedCorpus corpus = load_corpus(config, diag);
  const fs::path out = prepare_out_dir(config);

  struct Reports {
    std::vector<std::string> user_names;
    DegreeReport user;
    std::vector<std::string> post_ids;
    DegreeReport reply;
  };
  const auto reports = parallel_map(corpus.threads.size(), config.jobs, [&](std::size_t i) {
    const UserGraph ug = build_user_graph(corpus.threads[i]);
    const ReplyGraph rg = build_reply_graph(corpus.threads[i]);
    Reports r;
    for (NodeId n = 0; n < ug.node_count(); ++n) r.user_names.push_back(ug.name(n));
    for (NodeId n = 0; n < rg.node_count(); ++n) r.post_ids.push_back(rg.post_id(n));
    r.user = degree_sequences(ug);
    r.reply = degree_sequences(rg);
    return r;
  });

  // (graph, degree_kind, degree) -> node count, summed over the corpus.
  std::map<std::tuple<int, int, std::size_t>, std::size_t> hist;
  CsvWriter csv(out / kDegreesFile);
  csv.row({"graph", "node", "in_degree", "out_degree"});
  for (std::size_t i = 0; i < reports.size(); ++i) {
    const std::string& tid = corpus.threads[i].thread_id();
    auto emit = [&](const DegreeReport& d, const std::vector<std::string>& names, int kind) {
      for (std::size_t n = 0; n < names.size(); ++n) {
        csv.row({std::string(to_string(d.kind)), tid + ":" + names[n],
                 std::to_string(d.in_degree[n]), std::to_string(d.out_degree[n])});
      }
      for (auto [deg, count] : d.in_histogram) hist[{kind, 0, deg}] += count;
      for (auto [deg, count] : d.out_histogram) hist[{kind, 1, deg}] += count;
    };
    emit(reports[i].user, reports[i].user_names, 0);
    emit(reports[i].reply, reports[i].post_ids, 1);
  }
  csv.close();

  CsvWriter h(out / kDegreeHistFile);
  h.row({"graph", "degree_kind", "degree", "count"});
  for (const auto& [key, count] : hist) {
    const auto [kind, dk, deg] = key;
    h.row({kind == 0 ? "user" : "reply", dk == 0 ? "in" : "out", std::to_string(deg),
           std::to_string(count)});
  }
  h.close();
}

void cmd_classes(std::ostream& out) {
  out << "class,config1,config2,M,A,N\n";
  for (const AnchoredTriadClass& c : class_table().classes()) {
    fmt::print(out, "{},{},{},{},{},{}\n", c.name, to_string(c.members[0]),
               c.members.size() > 1 ? to_string(c.members[1]) : std::string(), c.man.mutual,
               c.man.asymmetric, c.man.null);
  }
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& diag) {
  CLI::App app{"Conversation-graph metrics and anchored triad census"};
  app.require_subcommand(1);

  std::vector<std::string> inputs;
  std::string out_dir = ".";
  std::size_t min_extra_posts = 5;
  bool keep_deleted_root = false;
  std::string deleted_sentinel = "[deleted]";
  std::string bins_text;
  std::string census_mode = "fast";
  std::string branching_mode = "internal";
  double rarity_threshold = kDefaultRarityThreshold;
  std::size_t jobs = default_jobs();
  std::string focus_path, baseline_path, class_name;

  auto add_output = [&](CLI::App* sub) {
    sub->add_option("--out", out_dir, "Output directory")->capture_default_str();
    sub->add_option("--jobs", jobs, "Worker threads")->check(CLI::PositiveNumber);
    sub->add_option("--bins", bins_text, "Node-count bins, e.g. 1-5,6-10,11-15");
  };
  auto add_corpus = [&](CLI::App* sub) {
    sub->add_option("--input", inputs, "Line-delimited JSON corpus (repeatable)")->required();
    sub->add_option("--min-extra-posts", min_extra_posts, "Minimum replies per thread")
        ->capture_default_str();
    sub->add_flag("--keep-deleted-root", keep_deleted_root, "Keep threads whose root author is deleted");
    sub->add_option("--deleted-sentinel", deleted_sentinel, "Author name marking a deleted account")
        ->capture_default_str();
    add_output(sub);
  };

  CLI::App* macro = app.add_subcommand("macro", "Per-thread macroscopic metrics and ECDFs");
  add_corpus(macro);
  macro->add_option("--branching-mode", branching_mode, "internal | all")
      ->check(CLI::IsMember({"internal", "all"}));

  CLI::App* census_cmd = app.add_subcommand("census", "Anchored triad census per thread");
  add_corpus(census_cmd);
  census_cmd->add_option("--census-mode", census_mode, "fast | naive")
      ->check(CLI::IsMember({"fast", "naive"}));

  CLI::App* compare = app.add_subcommand("compare", "Z-scores of a focus census against a baseline");
  compare->add_option("--focus", focus_path, "Focus census.csv")->required();
  compare->add_option("--baseline", baseline_path, "Baseline census.csv")->required();
  compare->add_option("--rarity-threshold", rarity_threshold, "Mean count below which a class is rare")
      ->capture_default_str();
  add_output(compare);

  CLI::App* timing = app.add_subcommand("timing", "Completion fractions of one anchored class");
  add_corpus(timing);
  timing->add_option("--class", class_name, "Class name, e.g. 201-b")->required();

  CLI::App* degrees = app.add_subcommand("degrees", "Degree sequences and histograms");
  add_corpus(degrees);

  CLI::App* classes = app.add_subcommand("classes", "List the 36 anchored triad classes");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, diag);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    RunConfig config;
    config.inputs.assign(inputs.begin(), inputs.end());
    config.out_dir = out_dir;
    config.filter.min_extra_posts = min_extra_posts;
    config.filter.drop_deleted_root = !keep_deleted_root;
    config.filter.deleted_sentinel = deleted_sentinel;
    if (!bins_text.empty()) config.bins = BinSpec::parse(bins_text);
    config.census_mode = census_mode == "naive" ? CensusMode::Naive : CensusMode::Fast;
    config.branching_mode =
        branching_mode == "all" ? BranchingMode::All : BranchingMode::Internal;
    config.jobs = jobs;
    config.rarity_threshold = rarity_threshold;

    if (*macro) cmd_macro(config, diag);
    else if (*census_cmd) cmd_census(config, diag);
    else if (*compare) cmd_compare(focus_path, baseline_path, config, diag);
    else if (*timing) cmd_timing(config, class_name, diag);
    else if (*degrees) cmd_degrees(config, diag);
    else if (*classes) cmd_classes(out);
  } catch (const ConfigError& e) {
    fmt::print(diag, "error: {}\n", e.what());
    return kExitConfig;
  } catch (const InvalidArgument& e) {
    fmt::print(diag, "error: {}\n", e.what());
    return kExitConfig;
  } catch (const std::exception& e) {
    fmt::print(diag, "error: {}\n", e.what());
    return kExitInput;
  }
  return kExitOk;
}

}  // namespace convgraph::cli

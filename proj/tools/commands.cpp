#include "commands.hpp"

#include "kpo/cmop.hpp"
#include "kpo/csv.hpp"
#include "kpo/ga.hpp"
#include "kpo/jde.hpp"
#include "kpo/knapsack.hpp"
#include "kpo/metrics.hpp"
#include "kpo/posort.hpp"
#include "kpo/relations.hpp"
#include "kpo/result_io.hpp"
#include "kpo/selection.hpp"

#include <algorithm>
#include <atomic>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <limits>
#include <memory>
#include <mutex>
#include <optional>
#include <sstream>
#include <thread>

namespace kpo::cli {

namespace fs = std::filesystem;

namespace {

fs::path prepare_out(const std::string& dir) {
  fs::path p(dir);
  std::error_code ec;
  fs::create_directories(p, ec);
  if (ec) throw ConfigError("cannot create output directory " + dir + ": " + ec.message());
  return p;
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write " + path.string());
  out << text;
}

template <class F>
void write_with(const fs::path& path, F&& body) {
  std::ostringstream os;
  body(os);
  write_text(path, os.str());
}

void write_manifest(const CLI::App& cmd, const fs::path& out) {
  write_text(out / "manifest.ini", "[" + cmd.get_name() + "]\n" + cmd.config_to_str(true, false));
}

RelationSpec resolve_relation(const std::string& text, std::size_t dim) {
  RelationSpec rel = RelationSpec::componentwise_min(dim);
  if (!text.empty()) {
    try {
      rel = parse_relation(text);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what());
    }
  }
  check_dimension(rel, dim);
  return rel;
}

PointSet load_points(const std::string& input, const std::string& measure) {
  CsvTable table = read_csv_file(input);
  if (measure == "counting" && !table.header.empty() && table.header.back() == "weight") {
    table.header.pop_back();
    table.values = Points(table.values.leftCols(table.values.cols() - 1));
  }
  return point_set_from_table(table);
}

void write_report(std::ostream& os, const std::vector<std::pair<std::string, double>>& rows) {
  os << "key,value\n";
  for (const auto& [k, v] : rows) os << k << ',' << format_double(v) << '\n';
}

std::string join(const IndexSet& s, char sep) {
  std::string out;
  for (std::size_t i = 0; i < s.size(); ++i) out += (i ? std::string(1, sep) : "") + std::to_string(s[i]);
  return out;
}

// sort ---------------------------------------------------------------------

struct SortOptions {
  std::string input, relation, mode = "exact", measure = "weights", out = ".";
};

void run_sort(const CLI::App& cmd, const SortOptions& o) {
  const PointSet ps = load_points(o.input, o.measure);
  const RelationSpec rel = resolve_relation(o.relation, ps.dim());
  PoRanking ranking;
  if (o.mode == "exact") {
    ranking = po_exact(ps, rel);
  } else {
    const auto* cw = std::get_if<Componentwise>(&rel.kind());
    if (!cw || cw->offset != 0) throw ConfigError("mode=prob needs a componentwise relation");
    ranking = po_prob(ps, cw->orientations);
  }
  const auto fronts = pareto_fronts(ps, rel);
  const fs::path out = prepare_out(o.out);
  write_with(out / "ranking.csv", [&](std::ostream& os) { write_ranking(os, ranking, &fronts); });
  write_manifest(cmd, out);
  std::cout << ps.size() << " items, " << ranking.classes.size() << " po classes, "
            << *std::max_element(fronts.begin(), fronts.end()) + 1 << " fronts\n";
}

// select -------------------------------------------------------------------

struct SelectOptions {
  std::string input, relation, measure = "weights", out = ".";
  std::optional<double> k, m;
  bool strict = false;
};

void run_select(const CLI::App& cmd, const SelectOptions& o) {
  if (o.k.has_value() == o.m.has_value()) throw ConfigError("select needs exactly one of --k and --m");
  const PointSet ps = load_points(o.input, o.measure);
  const RelationSpec rel = resolve_relation(o.relation, ps.dim());
  const PoRanking ranking = po_exact(ps, rel);

  double k = 0.0;
  IndexSet members;
  if (o.k) {
    k = *o.k;
    members = t_k(ranking, k, o.strict);
  } else {
    // Largest T_k whose measure stays within m.
    double mass = 0.0;
    for (const auto& cls : ranking.classes) {
      const double add = measure_of(ps.measure, cls);
      if (mass + add > *o.m) break;
      mass += add;
      k = ranking.po[cls.front()];
      members.insert(members.end(), cls.begin(), cls.end());
    }
    std::sort(members.begin(), members.end());
  }

  const double mu = measure_of(ps.measure, members);
  const double cho = members.empty() ? 0.0 : choice(ps, members, rel);
  const fs::path out = prepare_out(o.out);
  write_with(out / "selection.csv", [&](std::ostream& os) {
    os << "index\n";
    for (std::size_t i : members) os << i << '\n';
  });
  write_with(out / "report.csv", [&](std::ostream& os) {
    write_report(os, {{"k", k},
                      {"strict", o.strict ? 1.0 : 0.0},
                      {"size", static_cast<double>(members.size())},
                      {"measure", mu},
                      {"choice", cho},
                      {"diversity", members.empty() ? 0.0 : cho / (mu * mu)}});
  });
  write_manifest(cmd, out);
  std::cout << members.size() << " selected, measure " << mu << ", choice " << cho << '\n';
}

// oracle -------------------------------------------------------------------

struct OracleOptions {
  std::string input, relation, measure = "weights", out = ".";
  double m = 0.0;
};

void run_oracle(const CLI::App& cmd, const OracleOptions& o) {
  const PointSet ps = load_points(o.input, o.measure);
  if (ps.size() > kOracleMaxItems)
    throw DataError("oracle enumerates selections exhaustively and accepts at most " +
                    std::to_string(kOracleMaxItems) + " items");
  const RelationSpec rel = resolve_relation(o.relation, ps.dim());
  const OracleResult r = max_choice_oracle(ps, rel, o.m);
  const fs::path out = prepare_out(o.out);
  write_with(out / "maximizers.csv", [&](std::ostream& os) {
    os << "rank,choice,members\n";
    for (std::size_t i = 0; i < r.maximizers.size(); ++i)
      os << i << ',' << format_double(r.best_choice) << ',' << join(r.maximizers[i], ';') << '\n';
  });
  write_manifest(cmd, out);
  std::cout << "best choice " << r.best_choice << ", " << r.maximizers.size() << " maximizer(s), "
            << r.selections_visited << " selections visited\n";
}

// sort-grid ----------------------------------------------------------------

struct GridOptions {
  std::size_t grid = 0, uniform = 0;
  std::uint64_t seed = 0;
  std::string out = ".";
};

void run_grid(const CLI::App& cmd, const GridOptions& o) {
  if ((o.grid == 0) == (o.uniform == 0)) throw ConfigError("sort-grid needs exactly one of --grid and --uniform");
  PointSet ps;
  if (o.grid) {
    Points p(static_cast<Eigen::Index>(o.grid * o.grid), 2);
    for (std::size_t i = 0; i < o.grid; ++i)
      for (std::size_t j = 0; j < o.grid; ++j)
        p.row(static_cast<Eigen::Index>(i * o.grid + j)) << static_cast<double>(i), static_cast<double>(j);
    ps = PointSet(std::move(p));
  } else {
    ps = mc_sample_square(o.uniform, SquareDensity::Uniform, o.seed);
  }
  const PoRanking ranking = po_exact_planar(ps);
  const auto fronts = pareto_fronts(ps, RelationSpec::componentwise_min(2));
  const auto labels = ranking.class_labels();
  const std::size_t n_fronts = *std::max_element(fronts.begin(), fronts.end()) + 1;

  const fs::path out = prepare_out(o.out);
  write_with(out / "labels.csv", [&](std::ostream& os) {
    os << "x1,x2,po,po_class,front\n";
    for (std::size_t i = 0; i < ps.size(); ++i)
      os << format_double(ps.row(i)[0]) << ',' << format_double(ps.row(i)[1]) << ',' << format_double(ranking.po[i])
         << ',' << labels[i] << ',' << fronts[i] << '\n';
  });
  write_with(out / "summary.csv", [&](std::ostream& os) {
    write_report(os, {{"points", static_cast<double>(ps.size())},
                      {"po_classes", static_cast<double>(ranking.classes.size())},
                      {"fronts", static_cast<double>(n_fronts)}});
  });
  write_manifest(cmd, out);
  std::cout << ranking.classes.size() << " po classes vs " << n_fronts << " fronts\n";
}

// tau / partition ----------------------------------------------------------

struct TwoColumnOptions {
  std::string input, out = ".";
};

Points two_columns(const std::string& input) {
  const CsvTable t = read_csv_file(input);
  if (t.values.cols() != 2) throw DataError("expected exactly two columns in " + input);
  return t.values;
}

void run_tau(const CLI::App& cmd, const TwoColumnOptions& o) {
  const KendallResult r = kendall_tau(two_columns(o.input));
  const fs::path out = prepare_out(o.out);
  write_with(out / "tau.csv", [&](std::ostream& os) {
    write_report(os, {{"tau", r.tau},
                      {"approximation", r.via_choice},
                      {"gap", r.tau - r.via_choice},
                      {"choice", r.choice},
                      {"diversity", r.diversity}});
  });
  write_manifest(cmd, out);
  std::cout << "tau " << r.tau << ", 1-2*div " << r.via_choice << '\n';
}

void run_partition(const CLI::App& cmd, const TwoColumnOptions& o) {
  const Points p = two_columns(o.input);
  const IndexSet wealthy = largest_uncorrelated_pareto_set(p);
  std::vector<char> member(static_cast<std::size_t>(p.rows()), 0);
  for (std::size_t i : wealthy) member[i] = 1;
  const fs::path out = prepare_out(o.out);
  write_with(out / "partition.csv", [&](std::ostream& os) {
    os << "index,wealthy\n";
    for (std::size_t i = 0; i < member.size(); ++i) os << i << ',' << int(member[i]) << '\n';
  });
  write_manifest(cmd, out);
  std::cout << wealthy.size() << " of " << p.rows() << " in the wealthy set\n";
}

// ga -----------------------------------------------------------------------

struct GaOptions {
  std::string instance, out = ".";
  std::size_t items = 250, knapsacks = 2;
  std::uint64_t instance_seed = 0;
  std::vector<std::string> selectors{"nsga2", "po_count", "po_prob"};
  std::vector<std::uint64_t> seeds{0};
  std::size_t pop = 250, generations = 500, hv_every = 1, hv_samples = 100000, jobs = 1;
  double mutation = 0.01;
};

void run_ga(const CLI::App& cmd, const GaOptions& o) {
  std::vector<Selector> selectors;
  for (const auto& s : o.selectors) {
    const auto sel = parse_selector(s);
    if (!sel) throw ConfigError("unknown selector '" + s + "'");
    selectors.push_back(*sel);
  }
  if (selectors.empty() || o.seeds.empty()) throw ConfigError("ga needs selectors and seeds");

  KnapsackInstance inst;
  if (!o.instance.empty()) {
    std::ifstream in(o.instance);
    if (!in) throw DataError("cannot open " + o.instance);
    inst = read_instance(in);
  } else {
    inst = knapsack_generate(o.items, o.knapsacks, o.instance_seed);
  }

  std::vector<GaConfig> configs;
  for (Selector sel : selectors)
    for (std::uint64_t seed : o.seeds) {
      GaConfig c;
      c.pop_size = o.pop;
      c.generations = o.generations;
      c.mutation_prob = o.mutation;
      c.selector = sel;
      c.seed = seed;
      c.hv_every = o.hv_every;
      c.hv_samples = o.hv_samples;
      try {
        c.validate();
      } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
      }
      configs.push_back(c);
    }

  std::vector<ExperimentResult> results(configs.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (std::size_t i; (i = next++) < configs.size();) {
      try {
        results[i] = evolve(inst, configs[i]);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (std::size_t t = 1; t < std::max<std::size_t>(1, o.jobs); ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);

  const fs::path out = prepare_out(o.out);
  write_with(out / "instance.csv", [&](std::ostream& os) { write_instance(os, inst); });
  std::vector<std::string> header;
  for (std::size_t k = 0; k < inst.n_knapsacks; ++k) header.push_back("f" + std::to_string(k + 1));
  for (const auto& r : results) {
    const std::string stem = std::string(to_string(r.config.selector)) + "_s" + std::to_string(r.config.seed);
    write_with(out / ("front_" + stem + ".csv"), [&](std::ostream& os) { write_csv(os, header, r.final_front()); });
    write_text(out / ("result_" + stem + ".json"), result_to_json(r, "front_" + stem + ".csv"));
  }

  // Summary: mean final hypervolume per selector and change against nsga2.
  const std::size_t n_seeds = o.seeds.size();
  auto result_of = [&](std::size_t s, std::size_t seed_idx) -> const ExperimentResult& {
    return results[s * n_seeds + seed_idx];
  };
  std::vector<double> mean_hv(selectors.size(), 0.0);
  for (std::size_t s = 0; s < selectors.size(); ++s) {
    for (std::size_t j = 0; j < n_seeds; ++j) mean_hv[s] += result_of(s, j).final_hypervolume;
    mean_hv[s] /= static_cast<double>(n_seeds);
  }
  const auto base = std::find(selectors.begin(), selectors.end(), Selector::Nsga2);
  write_with(out / "summary.csv", [&](std::ostream& os) {
    os << "selector,mean_hypervolume,increase_vs_nsga2_percent\n";
    for (std::size_t s = 0; s < selectors.size(); ++s) {
      os << to_string(selectors[s]) << ',' << format_double(mean_hv[s]) << ',';
      if (base != selectors.end()) {
        const double b = mean_hv[static_cast<std::size_t>(base - selectors.begin())];
        os << format_double(100.0 * (mean_hv[s] - b) / b);
      }
      os << '\n';
      std::cout << to_string(selectors[s]) << ": mean hypervolume " << mean_hv[s] << '\n';
    }
  });

  // theta matrix: share of the target's final population dominated by the
  // dominator's, averaged over seeds; "others" pools every other selector.
  write_with(out / "theta.csv", [&](std::ostream& os) {
    os << "target,dominator,theta_percent\n";
    for (std::size_t a = 0; a < selectors.size(); ++a) {
      for (std::size_t b = 0; b <= selectors.size(); ++b) {
        if (b == a || (b == selectors.size() && selectors.size() < 2)) continue;
        double sum = 0.0;
        for (std::size_t j = 0; j < n_seeds; ++j) {
          std::vector<Points> dominators;
          if (b < selectors.size()) {
            dominators.push_back(result_of(b, j).final_objectives);
          } else {
            Points pooled(0, static_cast<Eigen::Index>(inst.n_knapsacks));
            for (std::size_t c = 0; c < selectors.size(); ++c) {
              if (c == a) continue;
              const Points& p = result_of(c, j).final_objectives;
              Points grown(pooled.rows() + p.rows(), pooled.cols());
              grown << pooled, p;
              pooled = std::move(grown);
            }
            dominators.push_back(std::move(pooled));
          }
          sum += dominated_fraction(result_of(a, j).final_objectives, dominators);
        }
        os << to_string(selectors[a]) << ',' << (b < selectors.size() ? to_string(selectors[b]) : "others") << ','
           << format_double(sum / static_cast<double>(n_seeds)) << '\n';
      }
    }
  });
  write_manifest(cmd, out);
}

// cmop ---------------------------------------------------------------------

struct CmopOptions {
  std::string problem = "sphere_constrained", out = ".";
  JdeConfig jde;
};

void run_cmop(const CLI::App& cmd, const CmopOptions& o) {
  CmopProblem problem;
  try {
    problem = cmop_problem(o.problem);
    o.jde.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  const JdeResult r = jde_solve(problem, o.jde);

  std::vector<std::string> header;
  for (std::size_t k = 0; k < problem.dim(); ++k) header.push_back("x" + std::to_string(k + 1));
  for (std::size_t i = 0; i < problem.ng; ++i) header.push_back("g" + std::to_string(i + 1));
  for (std::size_t j = 0; j < problem.nh; ++j) header.push_back("h" + std::to_string(j + 1));
  for (std::size_t m = 0; m < problem.n_objectives; ++m) header.push_back("f" + std::to_string(m + 1));
  Points front(static_cast<Eigen::Index>(r.feasible_front.size()), static_cast<Eigen::Index>(header.size()));
  for (std::size_t k = 0; k < r.feasible_front.size(); ++k) {
    const auto i = static_cast<Eigen::Index>(r.feasible_front[k]);
    front.row(static_cast<Eigen::Index>(k)) << r.population.row(i), r.evaluations.row(i);
  }

  std::size_t feasible = 0, best_feasible = 0;
  for (Eigen::Index i = 0; i < r.evaluations.rows(); ++i) feasible += problem.is_feasible(r.evaluations.row(i));
  for (std::size_t i : r.best) best_feasible += problem.is_feasible(r.evaluations.row(static_cast<Eigen::Index>(i)));
  double best_objective = std::numeric_limits<double>::infinity();
  for (std::size_t i : r.feasible_front)
    best_objective = std::min(best_objective, r.evaluations(static_cast<Eigen::Index>(i), r.evaluations.cols() -
                                                                      static_cast<Eigen::Index>(problem.n_objectives)));

  const fs::path out = prepare_out(o.out);
  write_with(out / "front.csv", [&](std::ostream& os) { write_csv(os, header, front); });
  write_with(out / "feasibility.csv", [&](std::ostream& os) {
    write_report(os, {{"population", static_cast<double>(r.population.rows())},
                      {"feasible", static_cast<double>(feasible)},
                      {"best_po_members", static_cast<double>(r.best.size())},
                      {"best_po_feasible", static_cast<double>(best_feasible)},
                      {"front_size", static_cast<double>(r.feasible_front.size())},
                      {"best_first_objective", best_objective},
                      {"evaluations", static_cast<double>(r.evaluations_used)}});
  });
  write_manifest(cmd, out);
  std::cout << feasible << " of " << r.population.rows() << " feasible, best f1 " << best_objective << '\n';
}

}  // namespace

std::vector<Command> register_commands(CLI::App& app) {
  std::vector<Command> commands;
  auto add = [&](const std::string& name, const std::string& help) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->configurable();
    return sub;
  };
  const auto modes = CLI::IsMember({"exact", "prob"});
  const auto measures = CLI::IsMember({"weights", "counting"});

  {
    auto o = std::make_shared<SortOptions>();
    auto* s = add("sort", "po ranking of a CSV point set");
    s->add_option("-i,--input", o->input, "CSV with header x1..xM[,weight]")->required()->check(CLI::ExistingFile);
    s->add_option("-r,--relation", o->relation, "relation text; componentwise min when empty");
    s->add_option("--mode", o->mode, "exact or prob")->check(modes)->capture_default_str();
    s->add_option("--measure", o->measure, "weights (use a weight column) or counting")->check(measures)->capture_default_str();
    s->add_option("-o,--out", o->out, "output directory")->capture_default_str();
    commands.push_back({s, [s, o] { run_sort(*s, *o); }});
  }
  {
    auto o = std::make_shared<SelectOptions>();
    auto* s = add("select", "T_k selection with choice and diversity");
    s->add_option("-i,--input", o->input)->required()->check(CLI::ExistingFile);
    s->add_option("-r,--relation", o->relation);
    s->add_option("-k,--k", o->k, "po threshold");
    s->add_option("-m,--m", o->m, "measure budget; the largest T_k within it is taken");
    s->add_flag("--strict", o->strict, "po < k instead of po <= k");
    s->add_option("--measure", o->measure)->check(measures)->capture_default_str();
    s->add_option("-o,--out", o->out)->capture_default_str();
    commands.push_back({s, [s, o] { run_select(*s, *o); }});
  }
  {
    auto o = std::make_shared<OracleOptions>();
    auto* s = add("oracle", "all selections of maximum choice within a measure budget");
    s->add_option("-i,--input", o->input)->required()->check(CLI::ExistingFile);
    s->add_option("-r,--relation", o->relation);
    s->add_option("-m,--m", o->m, "measure budget")->required();
    s->add_option("--measure", o->measure)->check(measures)->capture_default_str();
    s->add_option("-o,--out", o->out)->capture_default_str();
    commands.push_back({s, [s, o] { run_oracle(*s, *o); }});
  }
  {
    auto o = std::make_shared<GridOptions>();
    auto* s = add("sort-grid", "po classes and Pareto fronts on a lattice or a uniform sample");
    s->add_option("--grid", o->grid, "n for an n x n lattice");
    s->add_option("--uniform", o->uniform, "number of uniform points in the unit square");
    s->add_option("--seed", o->seed)->capture_default_str();
    s->add_option("-o,--out", o->out)->capture_default_str();
    commands.push_back({s, [s, o] { run_grid(*s, *o); }});
  }
  {
    auto o = std::make_shared<TwoColumnOptions>();
    auto* s = add("tau", "Kendall tau through choice");
    s->add_option("-i,--input", o->input)->required()->check(CLI::ExistingFile);
    s->add_option("-o,--out", o->out)->capture_default_str();
    commands.push_back({s, [s, o] { run_tau(*s, *o); }});
  }
  {
    auto o = std::make_shared<TwoColumnOptions>();
    auto* s = add("partition", "largest T_k with diversity at least 1/2 (both columns maximised)");
    s->add_option("-i,--input", o->input)->required()->check(CLI::ExistingFile);
    s->add_option("-o,--out", o->out)->capture_default_str();
    commands.push_back({s, [s, o] { run_partition(*s, *o); }});
  }
  {
    auto o = std::make_shared<GaOptions>();
    auto* s = add("ga", "knapsack GA experiments across selectors and seeds");
    s->add_option("--instance", o->instance, "knapsack CSV bundle; generated when empty")->check(CLI::ExistingFile);
    s->add_option("--items", o->items)->capture_default_str();
    s->add_option("--knapsacks", o->knapsacks)->capture_default_str();
    s->add_option("--instance-seed", o->instance_seed)->capture_default_str();
    s->add_option("--selectors", o->selectors, "nsga2, po_count, po_prob")->delimiter(',')->capture_default_str();
    s->add_option("--seeds", o->seeds)->delimiter(',')->capture_default_str();
    s->add_option("--pop", o->pop)->capture_default_str();
    s->add_option("--generations", o->generations)->capture_default_str();
    s->add_option("--mutation", o->mutation, "per-bit mutation probability")->capture_default_str();
    s->add_option("--hv-every", o->hv_every, "hypervolume recording interval, 0 for final only")->capture_default_str();
    s->add_option("--hv-samples", o->hv_samples, "Monte Carlo samples above four objectives")->capture_default_str();
    s->add_option("-j,--jobs", o->jobs, "worker threads")->capture_default_str();
    s->add_option("-o,--out", o->out)->capture_default_str();
    commands.push_back({s, [s, o] { run_ga(*s, *o); }});
  }
  {
    auto o = std::make_shared<CmopOptions>();
    auto* s = add("cmop", "jDE on a built-in constrained problem");
    s->add_option("-p,--problem", o->problem)->check(CLI::IsMember(cmop_problem_ids()))->capture_default_str();
    s->add_option("--pop", o->jde.pop_size)->capture_default_str();
    s->add_option("--generations", o->jde.generations)->capture_default_str();
    s->add_option("--tau1", o->jde.tau1)->capture_default_str();
    s->add_option("--tau2", o->jde.tau2)->capture_default_str();
    s->add_option("--seed", o->jde.seed)->capture_default_str();
    s->add_option("-o,--out", o->out)->capture_default_str();
    commands.push_back({s, [s, o] { run_cmop(*s, *o); }});
  }
  return commands;
}

}  // namespace kpo::cli

// gcf: graph -> translations -> convolution schemes, downscaling and
// augmentation, one file-based stage per subcommand.

#include <cstdlib>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "gcf/augmentation.hpp"
#include "gcf/conv_scheme.hpp"
#include "gcf/downscale.hpp"
#include "gcf/grid.hpp"
#include "gcf/inference.hpp"
#include "gcf/io.hpp"
#include "gcf/proxy.hpp"
#include "gcf/timing.hpp"
#include "gcf/translations.hpp"

namespace {

enum ExitCode { kOk = 0, kUsage = 2, kValidation = 3, kInvariant = 4 };

std::size_t worker_count(std::size_t requested) {
  if (const char* env = std::getenv("GCF_THREADS"); env && *env) {
    try {
      long v = std::stol(env);
      if (v < 1) throw gcf::InputError("GCF_THREADS must be a positive integer");
      return static_cast<std::size_t>(v);
    } catch (const std::logic_error&) {
      throw gcf::InputError(std::string("GCF_THREADS is not an integer: ") + env);
    }
  }
  return requested;
}

std::vector<std::size_t> parse_list(const std::string& text) {
  std::vector<std::size_t> out;
  std::stringstream in(text);
  for (std::string item; std::getline(in, item, ',');) {
    if (item.empty()) continue;
    std::size_t pos = 0;
    long v = -1;
    try {
      v = std::stol(item, &pos);
    } catch (const std::logic_error&) {
    }
    if (v < 0 || pos != item.size()) throw gcf::InputError("not a non-negative integer: '" + item + "'");
    out.push_back(static_cast<std::size_t>(v));
  }
  return out;
}

void print_stats(std::ostream& out, const gcf::ConvScheme& s) {
  const auto st = gcf::scheme_stats(s);
  out << "rows " << st.rows << "\nkappa " << st.kappa << "\nn_in " << s.n_in << "\nbottoms " << st.bottoms
      << "\nfill " << gcf::io::format_double(st.fill_ratio) << "\ncolumns";
  for (std::size_t c : st.column_defined) out << ' ' << c;
  out << '\n';
}

struct InferArgs {
  std::string signals, out, statistic = "covariance";
  std::size_t k = 4, channels = 1;
  bool allow_disconnected = false;
};

int run_infer(const InferArgs& a) {
  gcf::SignalMatrix s = gcf::io::load_signals(a.signals);
  if (a.channels > 1) s = gcf::average_channels(s, a.channels);
  if (a.k < 1 || a.k >= s.n) {
    std::cerr << "error: --k must satisfy 1 <= k < n (n = " << s.n << ")\n";
    return kUsage;
  }
  const auto stat = a.statistic == "correlation" ? gcf::Statistic::kCorrelation : gcf::Statistic::kCovariance;
  gcf::Graph g = gcf::knn_covariance_graph(s, a.k, stat);
  auto components = gcf::connected_components(g);
  if (components.size() > 1) {
    std::cerr << "warning: inferred graph is disconnected; " << gcf::describe_components(components) << '\n';
    if (!a.allow_disconnected) return kValidation;
  }
  gcf::io::save_graph(a.out, g);
  std::cout << "vertices " << g.order() << "\nedges " << g.edge_count() << "\nmax_degree " << g.max_degree() << '\n';
  return kOk;
}

struct FindArgs {
  std::string graph, out, dump_locals, domain = "context";
  long seed = -1;
  std::size_t auto_count = 0, threads = 1, context_cap = gcf::kDefaultContextCap;
  std::uint64_t rng_seed = 0;
};

int run_find(const FindArgs& a) {
  const gcf::Graph g = gcf::io::load_graph(a.graph);
  gcf::require_connected(g);
  gcf::LocalSearchOptions options;
  options.threads = worker_count(a.threads);
  options.context_cap = a.context_cap;
  options.domain = a.domain == "kernel" ? gcf::LocalDomain::kKernel : gcf::LocalDomain::kContext;
  const auto locals = gcf::find_all_local_translations(g, options);
  if (!a.dump_locals.empty()) gcf::io::write_file(a.dump_locals, gcf::io::dump(gcf::io::to_json(locals)));

  gcf::PropagationResult result;
  if (a.auto_count > 0) {
    const auto seeds = gcf::auto_seed_candidates(g, a.auto_count, a.rng_seed);
    auto search = gcf::propagate_best_seed(g, locals, seeds);
    for (const auto& c : search.tried) {
      std::cerr << "seed " << c.seed << ": unreached " << c.unreached << ", total cost " << c.total_cost
                << ", bottoms " << c.bottoms << '\n';
    }
    result = std::move(search.best);
    std::cerr << "selected seed " << result.family.v0 << '\n';
  } else {
    const gcf::Vertex seed = a.seed >= 0 ? static_cast<gcf::Vertex>(a.seed) : gcf::central_seed(g);
    result = gcf::propagate(g, locals, seed);
  }
  if (!result.unreached.empty()) {
    std::cerr << "warning: " << result.unreached.size() << " centers unreached by local translations:";
    for (std::size_t i = 0; i < result.unreached.size() && i < 16; ++i) std::cerr << ' ' << result.unreached[i];
    std::cerr << (result.unreached.size() > 16 ? " ...\n" : "\n");
  }
  gcf::io::save_family(a.out, result.family);
  std::cout << "seed " << result.family.v0 << "\nkappa " << result.family.kappa << "\nunreached "
            << result.unreached.size() << "\ntotal_cost " << result.family.total_cost() << '\n';
  return kOk;
}

struct SchemeArgs {
  std::string family, kept_plan, level_plan, out;
};

int run_build_scheme(const SchemeArgs& a) {
  gcf::ConvScheme s;
  if (!a.level_plan.empty()) {
    const auto plan = gcf::io::load_plan(a.level_plan);
    s = gcf::compile_scheme(gcf::chain(plan).family);
    s.level = plan.level;
  } else if (!a.family.empty()) {
    const auto f = gcf::io::load_family(a.family);
    if (!a.kept_plan.empty()) {
      const auto plan = gcf::io::load_plan(a.kept_plan);
      if (plan.n_parent != f.order()) {
        throw gcf::InputError("plan was computed on " + std::to_string(plan.n_parent) + " vertices, family covers " +
                              std::to_string(f.order()));
      }
      s = gcf::compile_scheme(f, plan.kept, plan.level);
    } else {
      s = gcf::compile_scheme(f);
    }
  } else {
    throw gcf::InputError("build-scheme needs --family or --plan");
  }
  gcf::io::save_scheme(a.out, s);
  print_stats(std::cout, s);
  return kOk;
}

struct DownscaleArgs {
  std::string graph, family, plan, out;
  std::size_t stride = 2;
  long seed = -1;
};

int run_downscale(const DownscaleArgs& a) {
  if (a.stride < 1) throw gcf::InputError("--stride must be at least 1");
  gcf::DownscalePlan plan;
  if (!a.plan.empty()) {
    const auto prev = gcf::io::load_plan(a.plan);
    auto level = gcf::chain(prev);
    const gcf::Vertex seed = a.seed >= 0 ? static_cast<gcf::Vertex>(a.seed) : level.family.v0;
    gcf::require_vertex(level.graph, seed);
    plan = gcf::downscale(level.graph, level.family, a.stride, seed, &level.origin, prev.level + 1);
  } else {
    if (a.graph.empty() || a.family.empty()) throw gcf::InputError("downscale needs --graph and --family, or --plan");
    const auto g = gcf::io::load_graph(a.graph);
    gcf::require_connected(g);
    const auto f = gcf::io::load_family(a.family);
    const gcf::Vertex seed = a.seed >= 0 ? static_cast<gcf::Vertex>(a.seed) : f.v0;
    gcf::require_vertex(g, seed);
    plan = gcf::downscale(g, f, a.stride, seed);
  }
  if (!plan.uncovered.empty()) {
    std::cerr << "warning: " << plan.uncovered.size() << " kept vertices were never reached by the family\n";
  }
  gcf::io::save_plan(a.out, plan);
  std::cout << "level " << plan.level << "\nstride " << plan.r << "\nkept " << plan.kept.size() << '\n';
  return kOk;
}

struct AugmentArgs {
  std::string signals, family, indices, out;
  std::size_t reps = 1, draws = 1;
  std::uint64_t seed = 0;
  double fill = 0.0;
};

int run_augment(const AugmentArgs& a) {
  const auto s = gcf::io::load_signals(a.signals);
  const auto f = gcf::io::load_family(a.family);
  gcf::AugmentationSpec spec;
  spec.repetitions = a.reps;
  spec.draws = a.draws;
  spec.fill = a.fill;
  if (a.indices.empty()) {
    for (std::size_t p = 1; p < f.kappa; ++p) spec.indices.push_back(p);
  } else {
    spec.indices = parse_list(a.indices);
  }
  const auto out = gcf::augment_dataset(s, spec, f, a.seed);
  gcf::io::save_signals(a.out, out);
  std::cout << "rows " << out.m << "\ncolumns " << out.n << '\n';
  return kOk;
}

struct ForwardArgs {
  std::string scheme, layer, signals, out;
};

int run_forward(const ForwardArgs& a) {
  const auto scheme = gcf::io::load_scheme(a.scheme);
  const auto layer = gcf::io::load_layer(a.layer);
  const auto x = gcf::io::load_signals(a.signals);
  gcf::SignalMatrix y(x.m, scheme.rows());
  for (std::size_t i = 0; i < x.m; ++i) {
    const auto row = gcf::forward(scheme, layer, x.row(i));
    std::copy(row.begin(), row.end(), y.row(i).begin());
  }
  gcf::io::save_signals(a.out, y);
  std::cout << "rows " << y.m << "\ncolumns " << y.n << '\n';
  return kOk;
}

struct VerifyArgs {
  std::size_t height = 0, width = 0, stride = 0, threads = 1;
  std::string scheme;
};

int run_verify(const VerifyArgs& a) {
  gcf::LocalSearchOptions options;
  options.threads = worker_count(a.threads);
  gcf::ConvScheme scheme;
  if (!a.scheme.empty()) scheme = gcf::io::load_scheme(a.scheme);
  const auto report = gcf::verify_grid(a.height, a.width, a.stride, a.scheme.empty() ? nullptr : &scheme, options);
  for (const auto& line : report.lines) std::cout << line << '\n';
  std::cout << (report.pass ? "PASS" : "FAIL") << " grid " << a.height << "x" << a.width << '\n';
  return report.pass ? kOk : kValidation;
}

struct StatsArgs {
  std::string scheme, graph, family, sizes = "1024,4096,16384";
  bool timing = false;
  std::size_t threads = 1, repeat = 1;
};

int run_stats(const StatsArgs& a) {
  bool any = false;
  if (!a.graph.empty()) {
    const auto g = gcf::io::load_graph(a.graph);
    const auto components = gcf::connected_components(g);
    std::cout << "vertices " << g.order() << "\nedges " << g.edge_count() << "\nmax_degree " << g.max_degree()
              << "\ncomponents " << components.size() << '\n';
    any = true;
  }
  if (!a.family.empty()) {
    const auto f = gcf::io::load_family(a.family);
    std::cout << "kappa " << f.kappa << "\nseed " << f.v0 << "\nunreached " << f.unreached().size()
              << "\ntotal_cost " << f.total_cost() << "\nbottoms " << f.bottom_count() << '\n';
    any = true;
  }
  if (!a.scheme.empty()) {
    print_stats(std::cout, gcf::io::load_scheme(a.scheme));
    any = true;
  }
  if (a.timing) {
    gcf::LocalSearchOptions options;
    options.threads = worker_count(a.threads);
    const auto report = gcf::time_grid_pipeline(parse_list(a.sizes), options, a.repeat);
    std::cout << report.format();
    any = true;
    if (!report.pass()) return kValidation;
  }
  if (!any) throw gcf::InputError("stats needs --graph, --family, --scheme or --timing");
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Translations, convolution schemes, downscaling and augmentation on graphs"};
  app.require_subcommand(1);
  int code = kOk;

  InferArgs infer;
  auto* c_infer = app.add_subcommand("infer-graph", "k-nearest-covariance graph from training signals");
  c_infer->add_option("--signals", infer.signals, "CSV or GSIG signal file (rows = samples)")->required();
  c_infer->add_option("--out", infer.out, "graph JSON output")->required();
  c_infer->add_option("-k,--k", infer.k, "neighbours kept per vertex")->capture_default_str();
  c_infer->add_option("--statistic", infer.statistic, "covariance or correlation")
      ->check(CLI::IsMember({"covariance", "correlation"}))
      ->capture_default_str();
  c_infer->add_option("--channels", infer.channels, "average C planar channel blocks before inference")
      ->capture_default_str();
  c_infer->add_flag("--allow-disconnected", infer.allow_disconnected, "write a disconnected graph instead of failing");
  c_infer->callback([&] { code = run_infer(infer); });

  FindArgs find;
  auto* c_find = app.add_subcommand("find-translations", "local translations and the proxy-translation family");
  c_find->add_option("--graph", find.graph, "graph JSON")->required();
  c_find->add_option("--out", find.out, "proxy family JSON output")->required();
  auto* seed_opt = c_find->add_option("--seed", find.seed, "seed vertex (default: graph center)");
  c_find->add_option("--auto", find.auto_count, "try N random seeds plus the max-degree vertex")->excludes(seed_opt);
  c_find->add_option("--rng-seed", find.rng_seed, "random seed for --auto")->capture_default_str();
  c_find->add_option("--threads", find.threads, "worker threads (GCF_THREADS overrides)")->capture_default_str();
  c_find->add_option("--domain", find.domain, "local domain: context (N_2) or kernel (N_1)")
      ->check(CLI::IsMember({"context", "kernel"}))
      ->capture_default_str();
  c_find->add_option("--context-cap", find.context_cap, "largest accepted |N_2(v)|")->capture_default_str();
  c_find->add_option("--dump-locals", find.dump_locals, "write all local translations as JSON");
  c_find->callback([&] { code = run_find(find); });

  SchemeArgs scheme;
  auto* c_scheme = app.add_subcommand("build-scheme", "compile a weight-sharing scheme");
  auto* fam_opt = c_scheme->add_option("--family", scheme.family, "proxy family JSON");
  c_scheme->add_option("--kept", scheme.kept_plan, "downscale plan: restrict outputs to its kept vertices (strided layer)")
      ->needs(fam_opt);
  c_scheme->add_option("--plan", scheme.level_plan, "downscale plan: scheme of its induced translations")
      ->excludes(fam_opt);
  c_scheme->add_option("--out", scheme.out, "scheme output (.json or .gsch)")->required();
  c_scheme->callback([&] { code = run_build_scheme(scheme); });

  DownscaleArgs down;
  auto* c_down = app.add_subcommand("downscale", "kept vertices and induced translations for stride r");
  auto* g_opt = c_down->add_option("--graph", down.graph, "graph JSON");
  auto* f_opt = c_down->add_option("--family", down.family, "proxy family JSON");
  c_down->add_option("--plan", down.plan, "previous plan: downscale its level again")->excludes(g_opt)->excludes(f_opt);
  c_down->add_option("--stride", down.stride, "stride r")->capture_default_str();
  c_down->add_option("--seed", down.seed, "seed vertex (default: the family or plan seed)");
  c_down->add_option("--out", down.out, "plan JSON output")->required();
  c_down->callback([&] { code = run_downscale(down); });

  AugmentArgs aug;
  auto* c_aug = app.add_subcommand("augment", "translate training signals along proxy-translations");
  c_aug->add_option("--signals", aug.signals, "CSV or GSIG input")->required();
  c_aug->add_option("--family", aug.family, "proxy family JSON")->required();
  c_aug->add_option("--out", aug.out, "output (.gsig binary, CSV otherwise)")->required();
  c_aug->add_option("--indices", aug.indices, "comma-separated kernel indices (default: all but 0)");
  c_aug->add_option("--reps", aug.reps, "compositions per copy")->capture_default_str();
  c_aug->add_option("--draws", aug.draws, "translated copies per row")->capture_default_str();
  c_aug->add_option("--seed", aug.seed, "random seed")->capture_default_str();
  c_aug->add_option("--fill", aug.fill, "value for vacated entries")->capture_default_str();
  c_aug->callback([&] { code = run_augment(aug); });

  ForwardArgs fwd;
  auto* c_fwd = app.add_subcommand("forward", "reference forward pass of one scheme layer over signal rows");
  c_fwd->add_option("--scheme", fwd.scheme, "scheme JSON or GSCH")->required();
  c_fwd->add_option("--layer", fwd.layer, "layer JSON {weights, bias, activation}")->required();
  c_fwd->add_option("--signals", fwd.signals, "CSV or GSIG input, one signal per row")->required();
  c_fwd->add_option("--out", fwd.out, "output (.gsig binary, CSV otherwise)")->required();
  c_fwd->callback([&] { code = run_forward(fwd); });

  VerifyArgs verify;
  auto* c_verify = app.add_subcommand("verify-grid", "check the pipeline against exact image shifts on a grid");
  c_verify->add_option("H", verify.height, "grid height")->required();
  c_verify->add_option("W", verify.width, "grid width")->required();
  c_verify->add_option("--stride", verify.stride, "also check downscaling at this stride");
  c_verify->add_option("--scheme", verify.scheme, "check this scheme file instead of the compiled one");
  c_verify->add_option("--threads", verify.threads, "worker threads (GCF_THREADS overrides)")->capture_default_str();
  c_verify->callback([&] { code = run_verify(verify); });

  StatsArgs stats;
  auto* c_stats = app.add_subcommand("stats", "summaries of artifacts and the linearity timing report");
  c_stats->add_option("--graph", stats.graph, "graph JSON");
  c_stats->add_option("--family", stats.family, "proxy family JSON");
  c_stats->add_option("--scheme", stats.scheme, "scheme JSON or GSCH");
  c_stats->add_flag("--timing", stats.timing, "time find-translations on square grids");
  c_stats->add_option("--sizes", stats.sizes, "grid orders for --timing")->capture_default_str();
  c_stats->add_option("--repeat", stats.repeat, "best of N runs per size")->capture_default_str();
  c_stats->add_option("--threads", stats.threads, "worker threads (GCF_THREADS overrides)")->capture_default_str();
  c_stats->callback([&] { code = run_stats(stats); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  } catch (const gcf::InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const gcf::ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kValidation;
  } catch (const gcf::InvariantError& e) {
    std::cerr << "invariant violated: " << e.what() << '\n';
    return kInvariant;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kInvariant;
  }
  return code;
}

// kvis: place, verify and generate k-visibility guard sets.

#include <iostream>

#include <CLI11.hpp>

#include "kvis/io.hpp"
#include "kvis/placement.hpp"
#include "kvis/polygen.hpp"
#include "kvis/verifier.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 1;
constexpr int kExitUncertified = 2;
constexpr int kExitCoverage = 3;

void emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
  } else {
    kvis::write_file(path, text);
  }
}

struct PlaceArgs {
  std::string input, out, svg, trace, mode = "minimal";
  int k = 2;
  double epsilon = 1e-6;
  std::uint64_t seed = 1;
};

int run_place(const PlaceArgs& a) {
  const kvis::PolygonDocument doc = kvis::parse_polygon(kvis::read_file(a.input));
  for (const std::string& w : doc.warnings) std::cerr << "warning: " << w << "\n";
  kvis::PlacementOptions opt;
  opt.mode = a.mode == "fast" ? kvis::DecompositionMode::kFast : kvis::DecompositionMode::kMinimal;
  opt.visibility.epsilon_rel = a.epsilon;
  opt.check_plan.seed = a.seed;
  const kvis::PlacementResult res = doc.polygon.holes.empty() ? kvis::place_guards(doc.polygon, a.k, opt)
                                                              : kvis::guard_with_holes(doc.polygon, a.k, opt);
  for (const std::string& w : res.trace.warnings) std::cerr << "warning: " << w << "\n";
  emit(a.out, kvis::write_guards(res.guards));
  if (!a.svg.empty()) {
    kvis::SvgLayers layers{&res.trace.decomposition, &res.guards, &res.trace};
    kvis::write_file(a.svg, kvis::render_svg(doc.polygon, layers));
  }
  if (!a.trace.empty()) kvis::write_file(a.trace, kvis::write_trace(res.trace, res.guards));
  std::cerr << res.guards.guards.size() << " guards, " << res.trace.decomposition.pieces.size()
            << " pieces, self-check min coverage " << res.min_coverage << " (target " << res.guards.target_m << ")\n";
  if (!res.certified) {
    std::cerr << "error: " << kvis::to_string(kvis::ErrorCode::kPlacementUncertified) << ": "
              << res.undercovered.size() << "+ undercovered samples";
    if (!res.undercovered.empty()) std::cerr << ", e.g. " << kvis::to_string(res.undercovered.front());
    std::cerr << "\n";
    return kExitUncertified;
  }
  return kExitOk;
}

struct VerifyArgs {
  std::string input, guards, report;
  int k = 2, m = 4, samples = 2000, grid = 64;
  std::uint64_t seed = 1;
};

int run_verify(const VerifyArgs& a) {
  const kvis::PolygonDocument doc = kvis::parse_polygon(kvis::read_file(a.input));
  kvis::GuardSet gs = kvis::parse_guards(kvis::read_file(a.guards));
  gs.k = a.k;
  gs.target_m = a.m;
  for (kvis::Guard& g : gs.guards) g.k = a.k;
  kvis::SamplePlan plan;
  plan.random_count = a.samples;
  plan.grid_density = a.grid;
  plan.seed = a.seed;
  const kvis::Decomposition d = kvis::decompose(doc.polygon, kvis::DecompositionMode::kMinimal);
  const kvis::CoverageReport rep = kvis::coverage(doc.polygon, gs, plan, static_cast<int>(d.pieces.size()));
  if (!a.report.empty()) kvis::write_file(a.report, kvis::write_report(rep));
  std::cout << "samples " << rep.samples.size() << ", min coverage " << rep.min_coverage << ", violations "
            << rep.violations.size() << ", guard bound " << (rep.guard_bound_ok ? "ok" : "exceeded") << "\n";
  for (std::size_t i = 0; i < rep.violations.size() && i < 10; ++i) {
    const std::size_t s = rep.violations[i];
    std::cout << "  undercovered " << kvis::to_string(rep.samples[s]) << " seen by " << rep.counts[s] << "\n";
  }
  return rep.min_coverage >= a.m && !rep.samples.empty() ? kExitOk : kExitCoverage;
}

struct GenArgs {
  std::string family, out;
  int n = 8, param = 0;
  std::uint64_t seed = 1;
};

int run_gen(const GenArgs& a) {
  const auto family = kvis::parse_family(a.family);
  if (!family) throw kvis::Error(kvis::ErrorCode::kInvalidArgument, "unknown family '" + a.family + "'");
  const kvis::PolygonWithHoles poly = kvis::generate({*family, a.n, a.seed, a.param});
  emit(a.out, kvis::write_polygon(poly, std::string(kvis::to_string(*family)) + "-n" + std::to_string(a.n) + "-s" +
                                            std::to_string(a.seed)));
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Edge guards under k-visibility"};
  app.require_subcommand(1);

  PlaceArgs place;
  CLI::App* p = app.add_subcommand("place", "place guards and self-certify them");
  p->add_option("--input", place.input, "polygon file")->required();
  p->add_option("--k", place.k, "visibility parameter (even, >= 2)")->required();
  p->add_option("--mode", place.mode, "decomposition mode")->check(CLI::IsMember({"minimal", "fast"}));
  p->add_option("--epsilon", place.epsilon, "nudge, relative to the bounding-box diagonal");
  p->add_option("--out", place.out, "guard file (default stdout)");
  p->add_option("--svg", place.svg, "SVG drawing");
  p->add_option("--trace", place.trace, "placement trace");
  p->add_option("--seed", place.seed, "self-check sampling seed");

  VerifyArgs verify;
  CLI::App* v = app.add_subcommand("verify", "certify coverage by sampling");
  v->add_option("--input", verify.input, "polygon file")->required();
  v->add_option("--guards", verify.guards, "guard file")->required();
  v->add_option("--k", verify.k, "visibility parameter")->required();
  v->add_option("--m", verify.m, "required multiplicity")->required();
  v->add_option("--samples", verify.samples, "random interior samples (on top of the grid)");
  v->add_option("--grid", verify.grid, "grid samples per axis");
  v->add_option("--seed", verify.seed, "sampling seed");
  v->add_option("--report", verify.report, "coverage report file");

  GenArgs gen;
  CLI::App* g = app.add_subcommand("gen", "generate a test polygon");
  g->add_option("--family", gen.family, "random|monotone|comb|spiral|staircase|dart|holes")->required();
  g->add_option("--n", gen.n, "vertex budget")->required();
  g->add_option("--seed", gen.seed, "seed");
  g->add_option("--param", gen.param, "shape parameter (default derived from n)");
  g->add_option("--out", gen.out, "polygon file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInput;
  }
  try {
    if (*p) return run_place(place);
    if (*v) return run_verify(verify);
    if (*g) return run_gen(gen);
  } catch (const kvis::Error& e) {
    std::cerr << "error: " << kvis::to_string(e.code()) << ": " << e.what() << "\n";
    return e.code() == kvis::ErrorCode::kPlacementUncertified ? kExitUncertified : kExitInput;
  }
  return kExitInput;
}

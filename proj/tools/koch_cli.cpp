// koch: command-line front end for the Koch surface library.
#include "CLI11.hpp"
#include "koch/bounds.hpp"
#include "koch/crystal.hpp"
#include "koch/json_io.hpp"
#include "koch/mesh.hpp"
#include "koch/osc.hpp"
#include "koch/verifier.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFail = 1;
constexpr int kExitInconclusive = 2;
constexpr int kExitUsage = 64;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void check_n(int N) {
  try {
    koch::validate_n(N);
  } catch (const koch::DomainError&) {
    throw UsageError("invalid N = " + std::to_string(N) +
                     ": N must be > 1 and not divisible by 3 (2, 4, 5, 7, 8, 10, ...)");
  }
}

void emit(const std::string& text, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError("cannot write " + path);
  out << text;
}

std::string num(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Koch N-surfaces: construction, dimension, measure bounds and case verification"};
  app.require_subcommand(1);
  int threads = 1;
  app.add_option("--threads", threads, "worker threads")->check(CLI::PositiveNumber);

  int N = 2, n = 1, level = 1, depth = -1;
  std::string output, format, case_id, ifs_file;
  double beta = 0.0, shrink = 1.0;
  bool exclude = false;

  auto* dim = app.add_subcommand("dim", "print the similarity dimension log(N^2+2)/log N");
  dim->add_option("N", N, "surface index");
  dim->add_option("--ifs", ifs_file, "IFS JSON file instead of N");
  dim->add_option("--format", format, "text or json")->check(CLI::IsMember({"text", "json"}));

  auto* bounds = app.add_subcommand("bounds", "a_n and the two-sided Hausdorff measure bounds");
  bounds->add_option("N", N)->required();
  bounds->add_option("--n", n, "level")->required()->check(CLI::PositiveNumber);
  bounds->add_option("--depth", depth, "sampling depth (non vertex-exact systems)");
  bounds->add_option("-o,--output", output);
  bounds->add_flag("--exclude-scaleable", exclude, "skip families that expand onto level n-1 cells");

  auto* mesh = app.add_subcommand("mesh", "prefractal surface mesh");
  auto* crystal = app.add_subcommand("crystal", "prefractal crystal mesh");
  for (auto* sub : {mesh, crystal}) {
    sub->add_option("N", N)->required();
    sub->add_option("--level", level)->check(CLI::NonNegativeNumber);
    sub->add_option("--format", format, "obj or ply")->check(CLI::IsMember({"obj", "ply"}));
    sub->add_option("-o,--output", output);
  }

  auto* verify = app.add_subcommand("verify-beta", "check a case's diameter lower bound by search");
  verify->add_option("N", N)->required();
  verify->add_option("--case", case_id, "case id, e.g. K2/Case3c.ii or Case1")->required();
  verify->add_option("--n", n, "level")->check(CLI::PositiveNumber);
  verify->add_option("--beta", beta, "override the registered beta");
  verify->add_flag("--exclude-scaleable", exclude);
  verify->add_option("-o,--output", output);

  auto* osc = app.add_subcommand("osc-check", "open set condition with the enclosure tetrahedron");
  osc->add_option("N", N)->required();
  osc->add_option("--depth", depth, "word length checked (default 4)");
  osc->add_option("--shrink", shrink, "scale the polytope about its centroid")->check(CLI::PositiveNumber);
  osc->add_option("-o,--output", output);

  auto* ifs = app.add_subcommand("ifs", "export the surface IFS as JSON");
  ifs->add_option("N", N)->required();
  ifs->add_option("-o,--output", output);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (dim->parsed()) {
      std::string label;
      double s;
      if (!ifs_file.empty()) {
        std::ifstream in(ifs_file);
        if (!in) throw UsageError("cannot read " + ifs_file);
        auto sys = koch::ifs_from_json(koch::Json::parse(in));
        s = koch::similarity_dimension(sys);
        label = sys.label();
      } else {
        check_n(N);
        s = koch::similarity_dimension(koch::build_koch_surface_ifs(N).ifs);
        label = "K_" + std::to_string(N);
      }
      if (format == "json") {
        koch::Json j;
        j["schema"] = koch::kSchemaVersion;
        j["label"] = label;
        j["s"] = s;
        std::cout << koch::dump_json(j) << '\n';
      } else {
        std::cout << num(s) << '\n';
      }
      return kExitOk;
    }
    check_n(N);
    if (bounds->parsed()) {
      koch::BoundOptions opts;
      opts.threads = threads;
      opts.depth = depth;
      std::unique_ptr<koch::CaseContext> ctx;
      if (exclude) {
        ctx = std::make_unique<koch::CaseContext>(N);
        ctx->index(n - 1);
        auto words = koch::enumerate_words(ctx->spec().ifs.size(), n);
        opts.skip_family = [&](const std::vector<int>& fam) {
          std::vector<koch::Word> w;
          for (int i : fam) w.push_back(words[i]);
          return koch::ratio_preserving_expansion(*ctx, w);
        };
      }
      auto report = koch::compute_bounds(N, n, opts);
      emit(koch::dump_json(koch::bound_report_json(report)) + "\n", output);
      return report.lower <= report.upper ? kExitOk : kExitFail;
    }
    if (mesh->parsed() || crystal->parsed()) {
      koch::TriangleMesh m = mesh->parsed() ? koch::prefractal_mesh(koch::build_koch_surface_ifs(N), level)
                                            : koch::prefractal_mesh(koch::build_crystal(N), level);
      std::ostringstream out;
      if (format == "ply")
        koch::write_ply(m, out);
      else
        koch::write_obj(m, out);
      emit(out.str(), output);
      return kExitOk;
    }
    if (verify->parsed()) {
      koch::CaseContext ctx(N);
      const auto& c = ctx.find_case(case_id);
      koch::CaseSearchOptions opts;
      opts.threads = threads;
      opts.exclude_scaleable = exclude;
      auto r = koch::verify_beta(ctx, c, n < 1 ? 2 : n, verify->count("--beta") ? beta : c.beta, opts);
      emit(koch::dump_json(koch::beta_report_json(r)) + "\n", output);
      return r.pass ? kExitOk : kExitFail;
    }
    if (osc->parsed()) {
      auto spec = koch::build_koch_surface_ifs(N);
      auto poly = spec.ifs.enclosure().scaled_about_centroid(shrink);
      auto rep = koch::check_open_set_condition(spec.ifs, poly, depth < 0 ? 4 : depth);
      koch::Json j;
      j["schema"] = koch::kSchemaVersion;
      j["N"] = N;
      j["depth"] = rep.depth;
      j["shrink"] = shrink;
      j["pass"] = rep.pass;
      j["points_checked"] = rep.points_checked;
      j["pairs_checked"] = rep.pairs_checked;
      j["min_separation_gap"] = rep.min_separation_gap;
      j["violations"] = rep.violations;
      emit(koch::dump_json(j) + "\n", output);
      return rep.pass ? kExitOk : kExitFail;
    }
    if (ifs->parsed()) {
      emit(koch::dump_json(koch::ifs_to_json(koch::build_koch_surface_ifs(N).ifs)) + "\n", output);
      return kExitOk;
    }
  } catch (const UsageError& e) {
    std::cerr << "koch: " << e.what() << '\n';
    return kExitUsage;
  } catch (const koch::BudgetExceeded& e) {
    std::cerr << "koch: inconclusive: " << e.what() << " (raise KOCH_BUDGET_NODES)\n";
    return kExitInconclusive;
  } catch (const koch::Inconclusive& e) {
    std::cerr << "koch: inconclusive: " << e.what() << '\n';
    return kExitInconclusive;
  } catch (const koch::DomainError& e) {
    std::cerr << "koch: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

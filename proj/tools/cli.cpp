#include "cli.hpp"

#include "treefactor/action.hpp"
#include "treefactor/boundary.hpp"
#include "treefactor/error.hpp"
#include "treefactor/full_group.hpp"
#include "treefactor/group.hpp"
#include "treefactor/ratio_set.hpp"
#include "treefactor/sampler.hpp"
#include "treefactor/serialize.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <functional>
#include <optional>
#include <ostream>

namespace treefactor::cli {
namespace {

struct RunConfig {
  unsigned s = 0;
  unsigned t = 0;
  unsigned m = 1;
  std::size_t depth = 0;
  std::size_t max_step = kDefaultMaxStep;
  std::uint64_t seed = 1;
  std::size_t n_samples = 1000;
  std::uint64_t max_cells = kDefaultSphereLimit;
  std::string format;
  std::string word;
  std::string g;
  std::string x;
  std::string y;
  std::string point;
  std::string lambda;
  std::string E;
  bool count_only = false;
};

Word parse_reduced(const std::string &text, const Presentation &p, const char *what) {
  const auto letters = parse_letters(text, p);
  if (!is_reduced(letters, p))
    throw ValidationError(std::string(what) + " '" + text + "' is not reduced");
  return reduce(letters, p);
}

void require(bool present, const char *flag) {
  if (!present)
    throw ValidationError(std::string("missing required flag ") + flag);
}

std::string format_or(const RunConfig &cfg, const char *fallback) {
  const std::string chosen = cfg.format.empty() ? fallback : cfg.format;
  if (chosen != "json" && chosen != "csv" && chosen != "text")
    throw ValidationError("unknown format '" + chosen + "' (json|csv|text)");
  return chosen;
}

void print_json(std::ostream &out, const json &j) { out << j.dump(2) << '\n'; }

int group_sphere(const RunConfig &cfg, const Presentation &p, std::ostream &out) {
  if (cfg.count_only) {
    out << sphere_size(cfg.m, p).get_str() << '\n';
    return kExitOk;
  }
  const auto words = sphere(cfg.m, p, cfg.max_cells);
  if (format_or(cfg, "text") == "json") {
    json arr = json::array();
    for (const auto &w : words)
      arr.push_back(format(w, p));
    print_json(out, arr);
  } else {
    for (const auto &w : words)
      out << format(w, p) << '\n';
  }
  return kExitOk;
}

int group_ck_matrix(const RunConfig &cfg, const Presentation &p, std::ostream &out) {
  const auto matrix = cuntz_krieger_matrix(p);
  json labels = json::array();
  for (Letter l : p.letters())
    labels.push_back(p.format(l));
  const std::string fmt = format_or(cfg, "text");
  if (fmt == "json") {
    print_json(out, {{"letters", labels}, {"matrix", matrix}});
    return kExitOk;
  }
  const char sep = fmt == "csv" ? ',' : ' ';
  for (const auto &row : matrix) {
    for (std::size_t j = 0; j < row.size(); ++j)
      out << (j ? std::string(1, sep) : "") << row[j];
    out << '\n';
  }
  return kExitOk;
}

int measure_cmd(const RunConfig &cfg, const Presentation &p, std::ostream &out) {
  require(!cfg.word.empty() || !cfg.E.empty(), "--word or --E");
  Rational value;
  std::string subject;
  if (!cfg.E.empty()) {
    value = measure(parse_cylinder_union(cfg.E, p), p);
    subject = cfg.E;
  } else {
    const Word w = parse_reduced(cfg.word, p, "word");
    value = measure(Cylinder{w}, p);
    subject = format(w, p);
  }
  if (format_or(cfg, "text") == "json")
    print_json(out, {{"set", subject}, {"measure", to_fraction_string(value)}});
  else
    out << to_fraction_string(value) << '\n';
  return kExitOk;
}

int act_cmd(const RunConfig &cfg, const Presentation &p, std::ostream &out) {
  require(!cfg.g.empty(), "--g");
  const Word g = parse_word(cfg.g, p);
  const std::string fmt = format_or(cfg, "text");
  if (!cfg.point.empty()) {
    const auto image = act_point(g, parse_point(cfg.point, p), p);
    if (fmt == "json")
      print_json(out, {{"g", format(g, p)}, {"point", format(image, p)}});
    else
      out << format(image, p) << '\n';
    return kExitOk;
  }
  require(!cfg.word.empty() || !cfg.E.empty(), "--word, --point or --E");
  const CylinderUnion source = cfg.E.empty()
                                   ? CylinderUnion::of({Cylinder{parse_reduced(cfg.word, p, "word")}}, p)
                                   : parse_cylinder_union(cfg.E, p);
  const auto image = act_union(g, source, p);
  if (fmt == "json") {
    print_json(out, {{"g", format(g, p)},
                     {"image", to_json(image, p)},
                     {"measure", to_fraction_string(measure(image, p))}});
  } else {
    for (const auto &c : image)
      out << format(c.base, p) << '\n';
  }
  return kExitOk;
}

int rn_cmd(const RunConfig &cfg, const Presentation &p, std::ostream &out) {
  require(!cfg.g.empty(), "--g");
  const Word g = parse_word(cfg.g, p);
  const std::size_t depth = cfg.depth ? cfg.depth : g.size() + 1;
  const auto table = rn_table(g, depth, p, cfg.max_cells);
  const std::string fmt = format_or(cfg, "json");
  if (fmt == "json") {
    print_json(out, to_json(table, p));
  } else {
    for (const auto &cell : table.cells()) {
      const std::string base = format(cell.cell.base, p);
      if (fmt == "csv")
        out << base << ',' << to_fraction_string(cell.value) << ',' << cell.exponent << '\n';
      else
        out << base << '\t' << to_fraction_string(cell.value) << '\n';
    }
  }
  return kExitOk;
}

PiecewiseTranslation build_from(const RunConfig &cfg, const Presentation &p) {
  require(!cfg.x.empty(), "--x");
  require(!cfg.y.empty(), "--y");
  return PiecewiseTranslation::build(parse_reduced(cfg.x, p, "x"), parse_reduced(cfg.y, p, "y"),
                                     cfg.max_step, p);
}

int kmap_build(const RunConfig &cfg, const Presentation &p, std::ostream &out) {
  const auto k = build_from(cfg, p);
  const std::string fmt = format_or(cfg, "json");
  if (fmt == "json") {
    print_json(out, to_json(k));
    return kExitOk;
  }
  for (const auto &piece : k.forward_pieces())
    out << format(piece.domain.base, p) << (fmt == "csv" ? "," : "\t")
        << format(piece.element, p) << (fmt == "csv" ? "," : "\t") << format(piece.image.base, p)
        << '\n';
  return kExitOk;
}

int kmap_verify(const RunConfig &cfg, const Presentation &p, std::ostream &out) {
  const auto report = verify_k(build_from(cfg, p));
  if (format_or(cfg, "json") == "json")
    print_json(out, to_json(report));
  else
    out << (report.ok ? "ok" : "failed") << '\n';
  return kExitOk;
}

int kmap_apply(const RunConfig &cfg, const Presentation &p, std::ostream &out) {
  require(!cfg.point.empty(), "--point");
  const auto k = build_from(cfg, p);
  const auto image = k.apply(parse_point(cfg.point, p));
  if (format_or(cfg, "text") == "json")
    print_json(out, {{"point", cfg.point}, {"image", format(image, p)}});
  else
    out << format(image, p) << '\n';
  return kExitOk;
}

int ergodic_check(const RunConfig &cfg, const Presentation &p, std::ostream &out) {
  if (sphere_size(cfg.m, p) * sphere_size(cfg.m, p) > BigInt(std::to_string(cfg.max_cells)))
    throw ResourceLimitError("transitivity check at m = " + std::to_string(cfg.m) +
                             " exceeds the pair limit");
  const auto report = transitivity_report(cfg.m, p);
  if (format_or(cfg, "json") == "json")
    print_json(out, {{"m", cfg.m},
                     {"transitive", report.transitive},
                     {"pairs_checked", report.pairs_checked},
                     {"failures", report.failures}});
  else
    out << (report.transitive ? "true" : "false") << '\n';
  return kExitOk;
}

int ratio_values(const RunConfig &cfg, const Presentation &p, std::ostream &out) {
  const std::size_t depth = cfg.depth ? cfg.depth : cfg.m + 1;
  const auto values = realized_rn_values(p, cfg.m, depth, cfg.max_cells);
  if (format_or(cfg, "json") == "json") {
    json arr = json::array();
    for (const auto &v : values)
      arr.push_back(to_fraction_string(v));
    print_json(out, arr);
  } else {
    for (const auto &v : values)
      out << to_fraction_string(v) << '\n';
  }
  return kExitOk;
}

int ratio_witness(const RunConfig &cfg, const Presentation &p, std::ostream &out) {
  require(!cfg.lambda.empty(), "--lambda");
  const CylinderUnion E = cfg.E.empty() ? CylinderUnion::whole() : parse_cylinder_union(cfg.E, p);
  WitnessOptions options;
  options.max_step = std::min<std::size_t>(cfg.max_step, WitnessOptions{}.max_step);
  const auto w = find_witness(parse_fraction(cfg.lambda), E, p, options);
  const auto check = check_witness(w, p);
  json report = to_json(w, p);
  report["verified"] = check.ok;
  report["failures"] = check.failures;
  print_json(out, report);
  return kExitOk;
}

int classify_cmd(const RunConfig &cfg, const Presentation &p, std::ostream &out) {
  const auto c = classify(p);
  if (format_or(cfg, "json") == "json")
    print_json(out, to_json(c, p));
  else
    out << c.label << '\n';
  return kExitOk;
}

int sample_cmd(const RunConfig &cfg, const Presentation &p, std::ostream &out) {
  const std::size_t depth = cfg.depth ? cfg.depth : 3;
  const auto batch = sample(p, depth, cfg.n_samples, cfg.seed);
  if (format_or(cfg, "csv") == "json")
    print_json(out, summary_json(batch, std::min<std::size_t>(cfg.m, depth)));
  else
    out << to_csv(batch);
  return kExitOk;
}

} // namespace

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
  CLI::App app{"Exact computations on the boundary of a homogeneous tree", "treefactor"};
  app.require_subcommand(1);
  app.fallthrough();

  RunConfig cfg;
  std::optional<unsigned> s_flag;
  std::optional<unsigned> t_flag;
  app.add_option("--s", s_flag, "number of order-2 generators");
  app.add_option("--t", t_flag, "number of infinite-order generators");
  app.add_option("--m", cfg.m, "level / sphere radius / maximum element length");
  app.add_option("--word", cfg.word, "a reduced word, e.g. \"a1 b1' a2\"");
  app.add_option("--g", cfg.g, "group element");
  app.add_option("--x", cfg.x, "source word of k_{x,y}");
  app.add_option("--y", cfg.y, "target word of k_{x,y}");
  app.add_option("--point", cfg.point, "boundary point \"prefix (cycle)\"");
  app.add_option("--depth", cfg.depth, "cylinder depth");
  app.add_option("--max-step", cfg.max_step, "steps of k_{x,y} to materialize");
  app.add_option("--lambda", cfg.lambda, "ratio-set target n^k as p/q");
  app.add_option("--E", cfg.E, "cylinder union as a JSON array of words");
  app.add_option("--n-samples", cfg.n_samples, "number of samples");
  app.add_option("--seed", cfg.seed, "random seed");
  app.add_option("--format", cfg.format, "json|csv|text");
  app.add_option("--max-cells", cfg.max_cells, "resource bound on enumerated cells");

  using Handler = std::function<int(const RunConfig &, const Presentation &, std::ostream &)>;
  Handler handler;
  auto bind = [&](CLI::App *sub, Handler h) { sub->callback([&handler, h] { handler = h; }); };

  auto *group = app.add_subcommand("group", "reduced words and the Cayley tree");
  group->require_subcommand(1);
  auto *sphere_cmd = group->add_subcommand("sphere", "words of length m");
  sphere_cmd->add_flag("--count", cfg.count_only, "print only N_m");
  bind(sphere_cmd, group_sphere);
  bind(group->add_subcommand("ck-matrix", "letter transition matrix"), group_ck_matrix);
  bind(app.add_subcommand("measure", "exact measure of a cylinder or union"), measure_cmd);
  bind(app.add_subcommand("act", "act on a cylinder, union or point"), act_cmd);
  bind(app.add_subcommand("rn", "Radon-Nikodym table of an element"), rn_cmd);
  auto *kmap = app.add_subcommand("kmap", "the involutions k_{x,y}");
  kmap->require_subcommand(1);
  bind(kmap->add_subcommand("build", "piece table"), kmap_build);
  bind(kmap->add_subcommand("verify", "exact verification report"), kmap_verify);
  bind(kmap->add_subcommand("apply", "evaluate at a point"), kmap_apply);
  auto *ergodic = app.add_subcommand("ergodic", "ergodicity criterion");
  ergodic->require_subcommand(1);
  bind(ergodic->add_subcommand("check", "transitivity on level-m cylinders"), ergodic_check);
  auto *ratio = app.add_subcommand("ratio", "ratio set");
  ratio->require_subcommand(1);
  bind(ratio->add_subcommand("values", "RN values of elements up to length m"), ratio_values);
  bind(ratio->add_subcommand("witness", "constructive witness for lambda"), ratio_witness);
  bind(app.add_subcommand("classify", "type label with evidence"), classify_cmd);
  bind(app.add_subcommand("sample", "Monte Carlo boundary sample"), sample_cmd);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp &) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError &e) {
    err << e.what() << '\n' << app.help();
    return kExitValidation;
  }

  try {
    if (!s_flag || !t_flag)
      throw ValidationError("--s and --t are required");
    const Presentation p(*s_flag, *t_flag);
    return handler(cfg, p, out);
  } catch (const ValidationError &e) {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const ResourceLimitError &e) {
    err << "resource limit: " << e.what() << '\n';
    return kExitResource;
  }
}

} // namespace treefactor::cli

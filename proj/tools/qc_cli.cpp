#include "qc_cli.hpp"

#include "qcdense/determining.hpp"
#include "qcdense/parse.hpp"
#include "qcdense/qc_ops.hpp"
#include "qcdense/solenoid.hpp"
#include "qcdense/subset_search.hpp"

#include "CLI11.hpp"
#include <nlohmann/json.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>

namespace qcdense::cli {

namespace {

using Json = nlohmann::ordered_json;

Json elements_json(const std::vector<GroupElement>& elems) {
  Json out = Json::array();
  for (const GroupElement& e : elems) out.push_back(element_to_string(e));
  return out;
}

Json characters_json(const std::vector<Character>& chars) {
  Json out = Json::array();
  for (const Character& c : chars) out.push_back(character_to_string(c));
  return out;
}

Json bound_json(const CharBound& b) {
  Json out;
  out["char_bound"] = b.torus_m_max;
  out["levels"] = b.padic_levels;
  if (b.max_support != SIZE_MAX) out["support"] = b.max_support;
  return out;
}

Json certificates_json(const ModelVerification& v) {
  Json out = Json::array();
  for (const ModelWitness& w : v.witnesses) {
    Json cert;
    cert["character"] = model_character_to_string(w.character);
    cert["witness"] = model_point_to_string(w.point);
    cert["value"] = w.value.to_string();
    out.push_back(std::move(cert));
  }
  return out;
}

Json solenoid_element_json(const SolenoidElement& x) {
  Json out;
  out["t"] = rat_to_string(x.t());
  out["c"] = x.c().str();
  Json s = Json::object();
  for (const auto& [p, v] : x.s()) s[std::to_string(p)] = v.str();
  out["s"] = std::move(s);
  return out;
}

struct ReportBuilder {
  Json report;
  std::chrono::steady_clock::time_point start =
      std::chrono::steady_clock::now();

  explicit ReportBuilder(const std::string& command) {
    report["command"] = command;
    report["inputs"] = Json::object();
  }

  void input(const std::string& key, const Json& value) {
    report["inputs"][key] = value;
  }

  int emit(std::ostream& out, int exit_code) {
    report["timing_ms"] = std::chrono::duration_cast<std::chrono::milliseconds>(
                              std::chrono::steady_clock::now() - start)
                              .count();
    out << report.dump(2) << '\n';
    return exit_code;
  }
};

std::string read_inline_or_file(const std::string& text) {
  if (!text.empty() && text.front() == '@') {
    std::ifstream in(text.substr(1));
    if (!in) throw std::invalid_argument("cannot read file " + text.substr(1));
    return {std::istreambuf_iterator<char>(in), {}};
  }
  return text;
}

OpenArc parse_arc(const std::string& text) {
  return OpenArc(parse_rational(text));
}

// ---- subcommand payloads ---------------------------------------------

struct Options {
  std::string group;
  std::string model;
  std::string set;
  std::string sets;
  std::string arc;
  std::string hom;
  std::string subgroup;
  std::string csv;
  std::string schedule = "10,100,1000";
  std::int64_t n = 1;
  std::int64_t seq_len = 0;
  std::int64_t char_bound = 0;
  std::int64_t prime_max = 0;
  std::int64_t height = 0;
  std::size_t dim = 2;
  int levels = 0;
  std::size_t support = SIZE_MAX;
  unsigned threads = 1;
  bool heuristic = false;
  bool polar_left_side = false;
};

CharBound make_bound(const Options& opt) {
  CharBound b;
  b.torus_m_max = opt.char_bound;
  b.padic_levels = opt.levels;
  b.max_support = opt.support;
  return b;
}

int run_hull(const Options& opt, std::ostream& out) {
  ReportBuilder rb("hull");
  FiniteAbelianGroup g = parse_group(opt.group);
  std::vector<GroupElement> e = parse_element_set(g, opt.set);
  rb.input("group", g.to_string());
  rb.input("set", elements_json(sorted_unique(e)));
  FiniteGroupContext ctx(g);
  rb.report["result"]["hull"] = elements_json(qc_hull(ctx, e));
  rb.report["result"]["quasi_convex"] = is_quasi_convex(ctx, e);
  return rb.emit(out, 0);
}

int run_polar(const Options& opt, std::ostream& out) {
  ReportBuilder rb("polar");
  FiniteAbelianGroup g = parse_group(opt.group);
  rb.input("group", g.to_string());
  FiniteGroupContext ctx(g);
  if (opt.polar_left_side) {
    std::vector<Character> a;
    for (const GroupElement& e : parse_element_set(g, opt.set)) {
      a.push_back(Character{e.coords});
    }
    rb.input("characters", characters_json(a));
    rb.input("side", "left");
    rb.report["result"]["polar"] = elements_json(polar_left(ctx, a));
  } else {
    std::vector<GroupElement> e = parse_element_set(g, opt.set);
    rb.input("set", elements_json(sorted_unique(e)));
    rb.input("side", "right");
    rb.report["result"]["polar"] = characters_json(polar_right(ctx, e));
  }
  return rb.emit(out, 0);
}

int run_dense(const Options& opt, std::ostream& out) {
  ReportBuilder rb("dense");
  if (!opt.group.empty()) {
    FiniteAbelianGroup g = parse_group(opt.group);
    std::vector<GroupElement> e = parse_element_set(g, opt.set);
    rb.input("group", g.to_string());
    rb.input("set", elements_json(sorted_unique(e)));
    FiniteGroupContext ctx(g);
    std::optional<Character> counter = find_polar_counterexample(ctx, e);
    rb.report["result"]["qc_dense"] = !counter.has_value();
    rb.report["result"]["exact"] = true;
    if (counter) {
      rb.report["result"]["counterexample"] = character_to_string(*counter);
    }
    return rb.emit(out, counter ? 1 : 0);
  }
  CompactModel m = parse_model(opt.model);
  std::vector<ModelPoint> pts = parse_point_set(m, opt.set);
  rb.input("model", m.to_string());
  Json pts_json = Json::array();
  for (const ModelPoint& p : pts) pts_json.push_back(model_point_to_string(p));
  rb.input("set", pts_json);
  CharBound bound = make_bound(opt);
  ModelVerification v = verify_qc_dense_up_to(m, pts, bound, opt.threads);
  rb.report["result"]["qc_dense_up_to_bound"] = v.ok;
  rb.report["result"]["exact"] = false;
  if (v.failing_character) {
    rb.report["result"]["counterexample"] =
        model_character_to_string(*v.failing_character);
  }
  rb.report["certificates"] = certificates_json(v);
  rb.report["bound"] = bound_json(bound);
  return rb.emit(out, v.ok ? 0 : 1);
}

int run_wset(const Options& opt, std::ostream& out) {
  ReportBuilder rb("wset");
  FiniteAbelianGroup g = parse_group(opt.group);
  std::vector<GroupElement> e = parse_element_set(g, opt.set);
  OpenArc u = parse_arc(opt.arc);
  rb.input("group", g.to_string());
  rb.input("set", elements_json(sorted_unique(e)));
  rb.input("arc", u.to_string());
  FiniteGroupContext ctx(g);
  rb.report["result"]["w_set"] = characters_json(w_set(ctx, e, u));
  return rb.emit(out, 0);
}

int run_sumset(const Options& opt, std::ostream& out) {
  ReportBuilder rb("sumset");
  FiniteAbelianGroup g = parse_group(opt.group);
  std::vector<GroupElement> e = parse_element_set(g, opt.set);
  rb.input("group", g.to_string());
  rb.input("set", elements_json(sorted_unique(e)));
  rb.input("n", opt.n);
  FiniteGroupContext ctx(g);
  rb.report["result"]["k_n"] = elements_json(sumset_k_n(ctx, e, opt.n));
  return rb.emit(out, 0);
}

int run_min_sumset(const Options& opt, std::ostream& out) {
  ReportBuilder rb("min-sumset");
  FiniteAbelianGroup g = parse_group(opt.group);
  std::vector<GroupElement> e = parse_element_set(g, opt.set);
  OpenArc u = parse_arc(opt.arc);
  rb.input("group", g.to_string());
  rb.input("set", elements_json(sorted_unique(e)));
  rb.input("arc", u.to_string());
  FiniteGroupContext ctx(g);
  MinSumsetResult r = min_sumset_qc_dense(ctx, e, u);
  rb.report["result"]["n"] = r.n;
  rb.report["result"]["v_n_bound"] = r.v_n_bound;
  rb.report["result"]["k_n"] = elements_json(r.k_n);
  return rb.emit(out, 0);
}

int run_witness_torus(const Options& opt, std::ostream& out) {
  ReportBuilder rb("witness torus");
  rb.input("seq_len", opt.seq_len);
  SuperSequence seq = torus_qc_sequence(opt.seq_len);
  CharBound bound = make_bound(opt);
  rb.input("char_bound", bound.torus_m_max);
  ModelVerification v = verify_qc_dense_up_to(
      CompactModel::torus(), seq.full_point_set(), bound, opt.threads);
  rb.report["result"]["qc_dense_up_to_bound"] = v.ok;
  if (v.failing_character) {
    rb.report["result"]["counterexample"] =
        model_character_to_string(*v.failing_character);
  }
  rb.report["certificates"] = certificates_json(v);
  rb.report["bound"] = bound_json(bound);
  return rb.emit(out, v.ok ? 0 : 1);
}

int run_witness_zp(const Options& opt, std::ostream& out) {
  ReportBuilder rb("witness zp");
  CompactModel m = parse_model(opt.model);
  if (m.kind() != CompactModel::Kind::PAdic) {
    throw std::invalid_argument("witness zp needs --model Zp(p)");
  }
  rb.input("model", m.to_string());
  rb.input("levels", opt.levels);
  SuperSequence seq = zp_qc_sequence(m.prime(), opt.levels);
  CharBound bound = make_bound(opt);
  ModelVerification v =
      verify_qc_dense_up_to(m, seq.full_point_set(), bound, opt.threads);
  rb.report["result"]["qc_dense_up_to_bound"] = v.ok;
  if (v.failing_character) {
    rb.report["result"]["counterexample"] =
        model_character_to_string(*v.failing_character);
  }
  rb.report["certificates"] = certificates_json(v);
  rb.report["bound"] = bound_json(bound);
  return rb.emit(out, v.ok ? 0 : 1);
}

int run_witness_fan(const Options& opt, std::ostream& out) {
  ReportBuilder rb("witness fan");
  CompactModel m = parse_model(opt.model);
  if (m.kind() != CompactModel::Kind::Product) {
    throw std::invalid_argument("witness fan needs --model prod(...)");
  }
  rb.input("model", m.to_string());
  rb.input("seq_len", opt.seq_len);
  rb.input("levels", opt.levels);
  SequenceBounds bounds;
  bounds.seq_len = opt.seq_len;
  bounds.levels = opt.levels;
  bounds.char_bound = make_bound(opt);
  bounds.threads = opt.threads;
  ModelSupersequenceResult r = build_determining_supersequence(m, bounds);
  rb.report["result"]["qc_dense_up_to_bound"] = r.report.ok;
  rb.report["result"]["points"] = static_cast<std::int64_t>(r.sequence.points.size());
  if (r.report.failing_character) {
    rb.report["result"]["counterexample"] =
        model_character_to_string(*r.report.failing_character);
  }
  rb.report["certificates"] = certificates_json(r.report);
  rb.report["bound"] = bound_json(bounds.char_bound);
  return rb.emit(out, r.report.ok ? 0 : 1);
}

int run_witness_qhat(const Options& opt, std::ostream& out) {
  ReportBuilder rb("witness qhat");
  rb.input("height", opt.height);
  rb.input("seq_len", opt.seq_len);
  rb.input("prime_max", opt.prime_max);
  rb.input("levels", opt.levels);
  std::vector<SolenoidElement> x =
      qhat_qc_sequence(opt.seq_len, opt.prime_max, opt.levels);
  QhatVerification v = verify_qhat_qc_dense(x, opt.height, opt.threads);
  rb.report["result"]["qc_dense_up_to_height"] = v.ok;
  if (v.failing_character) {
    rb.report["result"]["counterexample"] = rat_to_string(v.failing_character->q);
  }
  Json certs = Json::array();
  for (const QhatWitness& w : v.witnesses) {
    Json cert;
    cert["character"] = rat_to_string(w.character.q);
    cert["witness"] = solenoid_element_json(w.point);
    cert["value"] = w.value.to_string();
    certs.push_back(std::move(cert));
  }
  rb.report["certificates"] = std::move(certs);
  rb.report["bound"] = Json{{"height", opt.height}};
  return rb.emit(out, v.ok ? 0 : 1);
}

int run_fan(const Options& opt, std::ostream& out) {
  ReportBuilder rb("fan");
  FiniteAbelianGroup g = parse_group(opt.group);
  std::vector<std::string> set_specs = split_top_level(opt.sets, ';');
  if (set_specs.size() != g.num_factors()) {
    throw std::invalid_argument("fan needs one --sets entry per cyclic factor");
  }
  std::vector<FiniteAbelianGroup> factors;
  std::vector<std::vector<GroupElement>> subsets;
  for (std::size_t i = 0; i < set_specs.size(); ++i) {
    FiniteAbelianGroup cyclic({g.orders()[i]});
    subsets.push_back(parse_element_set(cyclic, set_specs[i]));
    factors.push_back(std::move(cyclic));
  }
  rb.input("group", g.to_string());
  rb.input("sets", opt.sets);
  auto [product, points] = fan_finite(factors, subsets);
  FiniteGroupContext ctx(product);
  std::optional<Character> counter = find_polar_counterexample(ctx, points);
  rb.report["result"]["fan"] = elements_json(sorted_unique(points));
  rb.report["result"]["qc_dense"] = !counter.has_value();
  if (counter) {
    rb.report["result"]["counterexample"] = character_to_string(*counter);
  }
  return rb.emit(out, counter ? 1 : 0);
}

int run_three_space(const Options& opt, std::ostream& out) {
  ReportBuilder rb("three-space");
  Homomorphism f = parse_homomorphism_json(read_inline_or_file(opt.hom));
  std::vector<GroupElement> x = parse_element_set(f.source(), opt.set);
  rb.input("hom", Json::parse(homomorphism_to_json(f)));
  rb.input("set", elements_json(sorted_unique(x)));
  ThreeSpaceVerdict v = check_three_space(f, x);
  rb.report["result"]["preconditions_ok"] = v.preconditions_ok;
  if (!v.preconditions_ok) {
    rb.report["result"]["precondition_failure"] = v.precondition_failure;
    return rb.emit(out, 1);
  }
  rb.report["result"]["x_dense_in_source"] = v.x_dense_in_source;
  rb.report["result"]["image_dense_in_target"] = v.image_dense_in_target;
  rb.report["result"]["biconditional_holds"] = v.biconditional_holds;
  if (v.counterexample) {
    rb.report["result"]["counterexample"] = character_to_string(*v.counterexample);
  }
  return rb.emit(out, v.biconditional_holds ? 0 : 1);
}

int run_near_char(const Options& opt, std::ostream& out) {
  ReportBuilder rb("near-char");
  FiniteAbelianGroup g = parse_group(opt.group);
  std::vector<GroupElement> x = parse_element_set(g, opt.set);
  rb.input("group", g.to_string());
  rb.input("set", elements_json(sorted_unique(x)));
  FiniteGroupContext ctx(g);
  NearCharacterizationVerdict v = check_near_characterization(ctx, x);
  rb.report["result"]["w_trivial_for_some_arc"] = v.w_trivial_for_some_arc;
  rb.report["result"]["restriction_injective"] = v.restriction_injective;
  rb.report["result"]["equivalent"] = v.equivalent;
  if (v.minimal_arc) {
    rb.report["result"]["minimal_arc"] = v.minimal_arc->to_string();
  }
  if (v.counterexample) {
    rb.report["result"]["counterexample"] = character_to_string(*v.counterexample);
  }
  return rb.emit(out, v.equivalent ? 0 : 1);
}

int run_determine(const Options& opt, std::ostream& out) {
  ReportBuilder rb("determine");
  if (!opt.group.empty()) {
    FiniteAbelianGroup g = parse_group(opt.group);
    std::vector<GroupElement> d = parse_element_set(g, opt.subgroup);
    rb.input("group", g.to_string());
    rb.input("subgroup", elements_json(sorted_unique(d)));
    FiniteDeterminationResult r = determines_finite(g, d);
    rb.report["result"]["determines"] = r.determines;
    rb.report["result"]["injective"] = r.injective;
    rb.report["result"]["restriction_image_size"] =
        r.restriction_image_size.str();
    rb.report["result"]["dual_size_of_d"] = r.dual_size_of_d.str();
    return rb.emit(out, r.determines ? 0 : 1);
  }
  CompactModel m = parse_model(opt.model);
  rb.input("model", m.to_string());
  rb.input("seq_len", opt.seq_len);
  rb.input("levels", opt.levels);
  SequenceBounds bounds;
  bounds.seq_len = opt.seq_len;
  bounds.levels = opt.levels;
  bounds.char_bound = make_bound(opt);
  bounds.threads = opt.threads;
  ModelSupersequenceResult seq = build_determining_supersequence(m, bounds);
  DeterminationVerdict v =
      determine_by_witness(m, seq.sequence.points, seq.sequence.full_point_set(),
                           bounds.char_bound, std::nullopt, opt.threads);
  rb.report["result"]["determines_up_to_bound"] = v.positive;
  rb.report["result"]["label"] = v.label;
  rb.report["certificates"] = certificates_json(*v.report);
  rb.report["bound"] = bound_json(bounds.char_bound);
  return rb.emit(out, v.positive ? 0 : 1);
}

int run_build_seq(const Options& opt, std::ostream& out) {
  ReportBuilder rb("build-seq");
  if (!opt.group.empty()) {
    FiniteAbelianGroup g = parse_group(opt.group);
    rb.input("group", g.to_string());
    FiniteSupersequenceResult r = build_determining_supersequence(g);
    rb.report["result"]["points"] = elements_json(sorted_unique(r.points));
    rb.report["result"]["factor_subsets"] = r.factor_subsets;
    rb.report["result"]["qc_dense"] = r.qc_dense;
    rb.report["result"]["exact"] = true;
    return rb.emit(out, r.qc_dense ? 0 : 1);
  }
  CompactModel m = parse_model(opt.model);
  rb.input("model", m.to_string());
  rb.input("seq_len", opt.seq_len);
  rb.input("levels", opt.levels);
  SequenceBounds bounds;
  bounds.seq_len = opt.seq_len;
  bounds.levels = opt.levels;
  bounds.char_bound = make_bound(opt);
  bounds.threads = opt.threads;
  ModelSupersequenceResult r = build_determining_supersequence(m, bounds);
  Json pts = Json::array();
  for (const ModelPoint& p : r.sequence.points) {
    pts.push_back(model_point_to_string(p));
  }
  rb.report["result"]["points"] = std::move(pts);
  rb.report["result"]["qc_dense_up_to_bound"] = r.report.ok;
  rb.report["certificates"] = certificates_json(r.report);
  rb.report["bound"] = bound_json(bounds.char_bound);
  return rb.emit(out, r.report.ok ? 0 : 1);
}

int run_search_min_dense(const Options& opt, std::ostream& out) {
  ReportBuilder rb("search min-dense");
  FiniteAbelianGroup g = parse_group(opt.group);
  rb.input("group", g.to_string());
  rb.input("heuristic", opt.heuristic);
  MinDenseResult r = search_min_dense(g, kDefaultSearchCap, opt.heuristic);
  rb.report["result"]["min_size"] = r.min_size;
  rb.report["result"]["heuristic"] = r.heuristic;
  Json classes = Json::array();
  for (const MinDenseClass& cls : r.classes) {
    Json c;
    c["representative"] = elements_json(cls.representative);
    c["members"] = Json::array();
    for (const auto& member : cls.members) {
      c["members"].push_back(elements_json(member));
    }
    classes.push_back(std::move(c));
  }
  rb.report["result"]["classes"] = std::move(classes);
  rb.report["result"]["solutions"] = static_cast<std::int64_t>(r.solutions.size());
  return rb.emit(out, 0);
}

int run_theorem1(const Options& opt, std::ostream& out) {
  ReportBuilder rb("experiment theorem1");
  OpenArc u = parse_arc(opt.arc);
  std::vector<std::vector<Rat>> points;
  for (const std::string& part : split_top_level(opt.set, ',')) {
    if (part.empty()) continue;
    std::string inner = part;
    if (inner.front() == '(' && inner.back() == ')') {
      inner = inner.substr(1, inner.size() - 2);
    }
    std::vector<Rat> coords;
    for (const std::string& c : split_top_level(inner, ',')) {
      coords.push_back(parse_rational(c));
    }
    points.push_back(std::move(coords));
  }
  std::vector<std::int64_t> schedule;
  for (const std::string& part : split_top_level(opt.schedule, ',')) {
    schedule.push_back(std::stoll(part));
  }
  rb.input("dim", opt.dim);
  rb.input("set", opt.set);
  rb.input("arc", u.to_string());
  rb.input("schedule", schedule);
  Theorem1Report r = theorem1_experiment(opt.dim, points, u, schedule,
                                         opt.threads);
  Json rows = Json::array();
  for (const Theorem1Row& row : r.rows) {
    Json jr;
    jr["M"] = row.box_radius;
    jr["count"] = row.count.str();
    jr["fraction"] = rat_to_string(row.fraction);
    rows.push_back(std::move(jr));
  }
  rb.report["result"]["rows"] = std::move(rows);
  rb.report["result"]["counts_strictly_increase"] = r.counts_strictly_increase;
  rb.report["result"]["stability_holds"] = r.stability_holds;
  rb.report["result"]["base_fraction"] = rat_to_string(r.base_fraction);
  if (!opt.csv.empty()) {
    std::ofstream csv(opt.csv);
    if (!csv) throw std::invalid_argument("cannot write CSV to " + opt.csv);
    csv << "M,count,fraction\n";
    for (const Theorem1Row& row : r.rows) {
      csv << row.box_radius << ',' << row.count.str() << ','
          << rat_to_string(row.fraction) << '\n';
    }
  }
  bool ok = r.counts_strictly_increase && r.stability_holds;
  return rb.emit(out, ok ? 0 : 1);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"qc - polars, quasi-convex hulls, qc-density certificates and "
               "determining-subgroup witnesses"};
  app.require_subcommand(1);

  Options opt;
  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--threads", opt.threads, "worker threads for verification");
  };

  CLI::App* hull = app.add_subcommand("hull", "quasi-convex hull E^><");
  hull->add_option("--group", opt.group)->required();
  hull->add_option("--set", opt.set)->required();

  CLI::App* polar = app.add_subcommand("polar", "polar E^> (or A^< with --left)");
  polar->add_option("--group", opt.group)->required();
  polar->add_option("--set", opt.set)->required();
  polar->add_flag("--left", opt.polar_left_side,
                  "treat --set as characters and compute the left polar");

  CLI::App* dense = app.add_subcommand("dense", "qc-density check");
  dense->add_option("--group", opt.group);
  dense->add_option("--model", opt.model);
  dense->add_option("--set", opt.set)->required();
  dense->add_option("--char-bound", opt.char_bound);
  dense->add_option("--levels", opt.levels);
  dense->add_option("--support", opt.support);
  add_common(dense);

  CLI::App* wset = app.add_subcommand("wset", "W(X,U) for an open arc U");
  wset->add_option("--group", opt.group)->required();
  wset->add_option("--set", opt.set)->required();
  wset->add_option("--arc", opt.arc)->required();

  CLI::App* sumset = app.add_subcommand("sumset", "n-fold sumset of X u {0}");
  sumset->add_option("--group", opt.group)->required();
  sumset->add_option("--set", opt.set)->required();
  sumset->add_option("--n", opt.n)->required();

  CLI::App* min_sumset =
      app.add_subcommand("min-sumset", "least n with K_n qc-dense");
  min_sumset->add_option("--group", opt.group)->required();
  min_sumset->add_option("--set", opt.set)->required();
  min_sumset->add_option("--arc", opt.arc)->required();

  CLI::App* witness =
      app.add_subcommand("witness", "qc-density certificates for models");
  witness->require_subcommand(1);
  CLI::App* wt = witness->add_subcommand("torus", "the 1/(2n) sequence in T");
  wt->add_option("--seq-len", opt.seq_len)->required();
  wt->add_option("--char-bound", opt.char_bound)->required();
  add_common(wt);
  CLI::App* wz = witness->add_subcommand("zp", "the k p^n sequence in Z_p");
  wz->add_option("--model", opt.model)->required();
  wz->add_option("--levels", opt.levels)->required();
  add_common(wz);
  CLI::App* wq = witness->add_subcommand("qhat", "the fan sequence in Q^");
  wq->add_option("--height", opt.height)->required();
  wq->add_option("--seq-len", opt.seq_len)->required();
  wq->add_option("--prime-max", opt.prime_max)->required();
  wq->add_option("--levels", opt.levels)->required();
  add_common(wq);
  CLI::App* wf = witness->add_subcommand("fan", "fan of factor sequences");
  wf->add_option("--model", opt.model)->required();
  wf->add_option("--seq-len", opt.seq_len)->required();
  wf->add_option("--levels", opt.levels)->required();
  wf->add_option("--char-bound", opt.char_bound)->required();
  wf->add_option("--support", opt.support);
  add_common(wf);

  CLI::App* fan = app.add_subcommand("fan", "fan of factor subsets, checked");
  fan->add_option("--group", opt.group)->required();
  fan->add_option("--sets", opt.sets, "';'-separated element sets, one per factor")
      ->required();

  CLI::App* three = app.add_subcommand("three-space", "the kernel biconditional");
  three->add_option("--hom", opt.hom, "homomorphism JSON (inline or @file)")
      ->required();
  three->add_option("--set", opt.set)->required();

  CLI::App* near = app.add_subcommand("near-char",
                                      "W-triviality vs restriction injectivity");
  near->add_option("--group", opt.group)->required();
  near->add_option("--set", opt.set)->required();

  CLI::App* det = app.add_subcommand("determine", "determining-subgroup check");
  det->add_option("--group", opt.group);
  det->add_option("--subgroup", opt.subgroup);
  det->add_option("--model", opt.model);
  det->add_option("--seq-len", opt.seq_len);
  det->add_option("--levels", opt.levels);
  det->add_option("--char-bound", opt.char_bound);
  det->add_option("--support", opt.support);
  add_common(det);

  CLI::App* bseq = app.add_subcommand("build-seq", "determining supersequence");
  bseq->add_option("--group", opt.group);
  bseq->add_option("--model", opt.model);
  bseq->add_option("--seq-len", opt.seq_len);
  bseq->add_option("--levels", opt.levels);
  bseq->add_option("--char-bound", opt.char_bound);
  bseq->add_option("--support", opt.support);
  add_common(bseq);

  CLI::App* search = app.add_subcommand("search", "subset searches");
  search->require_subcommand(1);
  CLI::App* smd = search->add_subcommand("min-dense",
                                         "minimum-cardinality qc-dense subsets");
  smd->add_option("--group", opt.group)->required();
  smd->add_flag("--heuristic", opt.heuristic, "beam search beyond the cap");

  CLI::App* experiment = app.add_subcommand("experiment", "counting experiments");
  experiment->require_subcommand(1);
  CLI::App* th1 = experiment->add_subcommand(
      "theorem1", "|W(X,U)| box counts across scales");
  th1->add_option("--dim", opt.dim)->required();
  th1->add_option("--set", opt.set)->required();
  th1->add_option("--arc", opt.arc)->required();
  th1->add_option("--schedule", opt.schedule);
  th1->add_option("--csv", opt.csv, "also write (M,count,fraction) rows");
  add_common(th1);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    return 2;
  }

  try {
    if (*hull) return run_hull(opt, out);
    if (*polar) return run_polar(opt, out);
    if (*dense) {
      if (opt.group.empty() == opt.model.empty()) {
        throw std::invalid_argument("dense needs exactly one of --group/--model");
      }
      return run_dense(opt, out);
    }
    if (*wset) return run_wset(opt, out);
    if (*sumset) return run_sumset(opt, out);
    if (*min_sumset) return run_min_sumset(opt, out);
    if (*wt) return run_witness_torus(opt, out);
    if (*wz) return run_witness_zp(opt, out);
    if (*wq) return run_witness_qhat(opt, out);
    if (*wf) return run_witness_fan(opt, out);
    if (*fan) return run_fan(opt, out);
    if (*three) return run_three_space(opt, out);
    if (*near) return run_near_char(opt, out);
    if (*det) {
      if (opt.group.empty() == opt.model.empty()) {
        throw std::invalid_argument(
            "determine needs exactly one of --group/--model");
      }
      return run_determine(opt, out);
    }
    if (*bseq) {
      if (opt.group.empty() == opt.model.empty()) {
        throw std::invalid_argument(
            "build-seq needs exactly one of --group/--model");
      }
      return run_build_seq(opt, out);
    }
    if (*smd) return run_search_min_dense(opt, out);
    if (*th1) return run_theorem1(opt, out);
  } catch (const std::invalid_argument& e) {
    err << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const enumeration_cap_exceeded& e) {
    err << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
  err << "usage error: no subcommand\n";
  return 2;
}

}  // namespace qcdense::cli

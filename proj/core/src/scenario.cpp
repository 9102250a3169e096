#include "arithdisc/scenario.hpp"

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "arithdisc/json_io.hpp"
#include "arithdisc/kummer.hpp"
#include "arithdisc/matfact.hpp"
#include "arithdisc/regroot.hpp"

namespace arithdisc {

namespace {

CheckEntry pass_entry(std::string name, std::string details) {
  return {std::move(name), CheckStatus::Pass, std::move(details)};
}
CheckEntry status_entry(std::string name, bool ok, std::string details) {
  return {std::move(name), ok ? CheckStatus::Pass : CheckStatus::Fail,
          std::move(details)};
}

TruncatedSeries random_series(Rng& rng, RingPtr ring, unsigned order, long height,
                              unsigned max_exp, unsigned min_val = 0) {
  const auto& K = ring->K();
  std::vector<LocalizedElement> cs(order, LocalizedElement{K.int_zero(), 0});
  for (unsigned t = min_val; t < order; ++t) {
    IntegerElement num;
    num.coords.resize(K.degree());
    for (size_t c = 0; c < K.degree(); ++c)
      num.coords[c] = Integer(rng.range(-height, height));
    cs[t] = LocalizedElement{num, ring->has_base()
                                     ? static_cast<unsigned>(rng.below(max_exp + 1))
                                     : 0u};
  }
  return series_from_coeffs(std::move(ring), order, std::move(cs));
}

void run_hensel(const nlohmann::json& sc, Report& rep, const ExactConfig& cfg) {
  unsigned k = sc.value("k", 2u);
  unsigned order = sc.value("order", 16u);
  TruncatedSeries f = hensel_root(k, order, cfg);

  nlohmann::json coeffs = nlohmann::json::array();
  for (const auto& c : f.coeffs) coeffs.push_back(c.num.coords[0].get_str());
  rep.scenario_echo["coefficients"] = coeffs;

  bool integral = true;
  for (const auto& c : f.coeffs)
    if (c.denom_exp != 0) integral = false;
  rep.entries.push_back(status_entry("hensel/integral_coefficients", integral,
                                     "all coefficients in Z"));

  // f^k == 1 - k^2 t mod t^N.
  TruncatedSeries fk = series_one(f.ring, order);
  for (unsigned j = 0; j < k; ++j) fk = series_mul(fk, f, cfg);
  TruncatedSeries target = series_one(f.ring, order);
  if (order > 1)
    target.coeffs[1] =
        LocalizedElement{f.ring->K().from_integer(-Integer(k) * Integer(k)), 0};
  rep.entries.push_back(status_entry("hensel/power_identity",
                                     series_equal(fk, target),
                                     "f^k == 1 - k^2 t mod t^N"));
}

void run_kummer(const nlohmann::json& sc, Report& rep, const ExactConfig& cfg) {
  FieldPtr field = json_to_field(sc.value("field", nlohmann::json("rational")));
  unsigned k = sc.value("k", 2u);
  unsigned order = sc.value("order", 32u);
  IntegerElement a = sc.contains("a") ? json_to_int_element(sc.at("a"), *field)
                                      : field->from_integer(2);
  KummerData data = make_kummer_data(k, a, field, order, cfg);
  rep.scenario_echo["twist"] = {{"b", localized_to_json(data.b)}, {"m", data.m}};
  for (const auto& c : kummer_verify(data, field, order, cfg))
    rep.entries.push_back(status_entry("kummer/" + c.name, c.pass, c.details));
}

void run_wdiv(const nlohmann::json& sc, Report& rep, const ExactConfig& cfg) {
  RingPtr ring = json_to_ring(sc.at("ring"));
  unsigned order = sc.value("order", 16u);
  const auto& K = ring->K();
  IntegerElement base = ring->base();

  TruncatedSeries f =
      sc.contains("f") ? json_to_series(sc.at("f"), ring) : TruncatedSeries{};
  TruncatedSeries g =
      sc.contains("g") ? json_to_series(sc.at("g"), ring) : TruncatedSeries{};
  if (!sc.contains("f") || !sc.contains("g")) {
    Rng rng(sc.value("seed", 1u));
    if (!sc.contains("f")) f = random_series(rng, ring, order, 100, 4);
    if (!sc.contains("g")) {
      g = random_series(rng, ring, order, 100, 4);
      if (!t_valuation(g)) g = series_one(ring, order);
    }
  }
  WDivMode mode = sc.value("mode", std::string("remainder")) == "quotient"
                      ? WDivMode::BoundQuotient
                      : WDivMode::BoundRemainder;
  WDivResult res = weierstrass_divide(f, g, mode, cfg);
  rep.scenario_echo["shift"] = res.shift;
  rep.scenario_echo["scale_exp"] = res.scale_exp;

  // Exact identity a^e f == r + a^e g h.
  LocalizedElement ae{K.pow(base, res.scale_exp), 0};
  TruncatedSeries lhs = series_scalar_mul(series_truncate(f, res.r.order), ae);
  TruncatedSeries gh = series_shift(
      series_mul(series_divide_t(series_truncate(g, res.r.order), res.shift), res.h,
                 cfg),
      res.shift);
  TruncatedSeries rhs = series_add(res.r, series_scalar_mul(gh, ae));
  rep.entries.push_back(status_entry("wdiv/identity", series_equal(lhs, rhs),
                                     "a^e f == r + a^e g h mod t^N"));
  rep.entries.push_back(status_entry(
      "wdiv/quotient_unit", !res.h.coeffs.empty() &&
                                loc_equal(res.h.coeffs[0],
                                          LocalizedElement{K.int_one(), 0}, K, base),
      "h(0) = 1"));
  bool tail_integral = true;
  for (unsigned i = res.shift; i < res.r.order; ++i)
    if (!loc_is_integral(res.r.coeffs[i], K, base)) tail_integral = false;
  rep.entries.push_back(
      status_entry("wdiv/tail_integral", tail_integral, "r_n in R for n >= shift"));
  unsigned undecided = 0, failed = 0;
  for (auto s : res.bound_status) {
    if (s == Certainty::Undecidable) ++undecided;
    if (s == Certainty::False) ++failed;
  }
  std::ostringstream os;
  os << res.bound_status.size() << " slots, " << undecided << " undecidable, "
     << failed << " failed";
  CheckStatus bs = failed ? CheckStatus::Fail
                          : (undecided ? CheckStatus::Undecidable : CheckStatus::Pass);
  rep.entries.push_back({"wdiv/mode_bound", bs, os.str()});
  if (!res.nonintegral_head.empty()) {
    std::ostringstream hs;
    for (unsigned i : res.nonintegral_head) hs << i << " ";
    rep.entries.push_back(pass_entry("wdiv/nonintegral_head_indices", hs.str()));
  }
}

void run_split(const nlohmann::json& sc, Report& rep, const ExactConfig& cfg) {
  FieldPtr field = json_to_field(sc.value("field", nlohmann::json("rational")));
  std::vector<IntegerElement> branch;
  for (const auto& a : sc.at("layout")) branch.push_back(json_to_int_element(a, *field));
  size_t one_index = sc.value("one_index", 0u);
  BranchLayout layout = BranchLayout::create(field, branch, one_index);
  size_t i = sc.value("i", 1u);
  unsigned order = sc.value("order", 16u);

  TruncatedSeries f = sc.contains("f")
                          ? json_to_series(sc.at("f"), layout.ring_full())
                          : TruncatedSeries{};
  if (!sc.contains("f")) {
    Rng rng(sc.value("seed", 1u));
    f = random_series(rng, layout.ring_full(), order, 50, 3);
  }
  auto [g, h] = split_series(f, i, layout, cfg);
  const auto& K = *field;
  TruncatedSeries sum = series_add(series_rebase(g, layout.ring_full(), layout.a_complement(i)),
                                   series_rebase(h, layout.ring_full(), layout.at(i)));
  rep.entries.push_back(
      status_entry("split/additivity", series_equal(sum, f), "f == g + h exactly"));
  auto vf = t_valuation(f);
  auto vg = t_valuation(g);
  auto vh = t_valuation(h);
  bool val_ok = (!vf || ((!vg || *vg >= *vf) && (!vh || *vh >= *vf)));
  rep.entries.push_back(status_entry("split/valuation", val_ok,
                                     "v_t(g), v_t(h) >= v_t(f)"));
  const TruncatedSeries& designated = (i == layout.one_index()) ? h : g;
  bool cert = designated.bound_cert.has_value();
  Rational c1_hi = K.c1_interval(cfg.prec_start).hi;
  (void)c1_hi;
  rep.entries.push_back(status_entry("split/designated_cert", cert,
                                     "C_1 certificate attached"));
}

void run_factor(const nlohmann::json& sc, Report& rep, const ExactConfig& cfg) {
  FieldPtr field = json_to_field(sc.value("field", nlohmann::json("gaussian")));
  std::vector<IntegerElement> branch;
  if (sc.contains("layout")) {
    for (const auto& a : sc.at("layout"))
      branch.push_back(json_to_int_element(a, *field));
  } else {
    branch = {IntegerElement{{Integer(1), Integer(1)}},
              IntegerElement{{Integer(2), Integer(1)}}, field->from_integer(3)};
  }
  BranchLayout layout = BranchLayout::create(field, branch, sc.value("one_index", 0u));
  size_t i = sc.value("i", 0u);
  unsigned order = sc.value("order", 32u);
  size_t n = sc.value("n", 2u);
  uint64_t seed = sc.value("seed", 1u);
  std::string mode = sc.value("mode", std::string("near-identity"));
  RingPtr ringI = layout.ring_full();

  FactorizationResult res;
  SeriesMatrix b;
  TruncatedSeries q = series_one(ringI, order);
  if (sc.contains("b")) {
    b = mat_zero(ringI, n, order);
    const auto& rows = sc.at("b");
    for (size_t r = 0; r < n; ++r)
      for (size_t c = 0; c < n; ++c)
        b.at(r, c) = json_to_series(rows[r][c], ringI);
  } else {
    Rng rng(seed);
    b = random_near_identity(rng, layout, n, order, 3, 2);
  }
  if (sc.contains("q")) q = json_to_series(sc.at("q"), ringI);

  if (mode == "near-identity") {
    res = near_identity_factor(b, i, layout, cfg);
    SeriesMatrix pl = mat_rebase(res.left, ringI, layout.a_complement(i));
    SeriesMatrix pr = mat_rebase(res.right, ringI, layout.at(i));
    SeriesMatrix prod = mat_mul(mat_mul(pl, b, cfg), pr, cfg);
    rep.entries.push_back(status_entry(
        "factor/identity", mat_equal(prod, mat_identity(ringI, n, order)),
        "p' b p == 1 mod t^N"));
    bool quad = true;
    for (size_t t = 1; t < res.valuation_trace.size(); ++t)
      if (res.valuation_trace[t] < 2 * res.valuation_trace[t - 1]) quad = false;
    rep.entries.push_back(
        status_entry("factor/quadratic_progress", quad, "v_t doubles per step"));
    rep.entries.push_back(status_entry(
        "factor/support_separation",
        mat_supported_on(res.left, layout.at(i)) &&
            mat_supported_on(res.right, layout.a_complement(i)),
        "left over R[1/a_i], right over R[1/a_i']"));
  } else {
    bool swapped = sc.value("swapped", false);
    res = general_factor(QuotMatrix{b, q}, i, layout, swapped, std::nullopt, cfg);
    const IntegerElement cof_left = swapped ? layout.at(i) : layout.a_complement(i);
    const IntegerElement cof_right = swapped ? layout.a_complement(i) : layout.at(i);
    SeriesMatrix L = mat_rebase(res.left, ringI, cof_left);
    SeriesMatrix Rn = mat_rebase(res.right, ringI, cof_right);
    TruncatedSeries lhs_den = series_one(ringI, order);
    if (res.left_den)
      lhs_den = series_mul(lhs_den, series_rebase(*res.left_den, ringI, cof_left), cfg);
    if (res.right_den)
      lhs_den = series_mul(lhs_den, series_rebase(*res.right_den, ringI, cof_right), cfg);
    SeriesMatrix lhs = mat_scalar_mul(b, lhs_den);
    SeriesMatrix rhs = mat_scalar_mul(mat_mul(L, Rn, cfg), q);
    bool ok = mat_equal(mat_truncate(lhs, res.n_eff), mat_truncate(rhs, res.n_eff));
    rep.entries.push_back(status_entry("factor/roundtrip", ok,
                                       "recomposition matches input mod t^N_eff"));
  }
  rep.scenario_echo["iterations"] = res.iterations;
  rep.scenario_echo["valuation_trace"] = res.valuation_trace;
  rep.scenario_echo["n_eff"] = res.n_eff;
  rep.scenario_echo["bound_reports"] = res.bound_reports;
}

void run_root(const nlohmann::json& sc, Report& rep, const ExactConfig& cfg) {
  RingPtr ring = json_to_ring(sc.at("ring"));
  std::vector<TruncatedSeries> coeffs;
  for (const auto& c : sc.at("poly")) coeffs.push_back(json_to_series(c, ring));
  SeriesPolynomial h = make_series_polynomial(std::move(coeffs));

  if (sc.value("normalize", false)) {
    auto [hn, rec] = normalize_poly(h, cfg);
    rep.scenario_echo["record"] = {
        {"scale_a_exp", rec.scale_a_exp},
        {"shift_e", rec.shift_e},
        {"beta", localized_to_json(rec.beta)}};
    h = std::move(hn);
  }
  TruncatedSeries y = recursive_root(h, cfg);
  nlohmann::json root = nlohmann::json::array();
  for (const auto& c : y.coeffs) root.push_back(localized_to_json(c));
  rep.scenario_echo["root"] = root;
  TruncatedSeries val = eval_poly_at(h, y, cfg);
  rep.entries.push_back(
      status_entry("root/solves", series_is_zero(val), "h(y) == 0 mod t^N"));
}

FiniteGroup group_from(const nlohmann::json& sc, const char* key, size_t fallback) {
  if (sc.contains(key)) return json_to_group(sc.at(key));
  return FiniteGroup::cyclic(fallback);
}

GroupAction action_from(const nlohmann::json& sc, const char* key,
                        const FiniteGroup& acting, const FiniteGroup& target) {
  if (!sc.contains(key)) return GroupAction::trivial(acting, target.order());
  std::vector<std::vector<size_t>> table;
  for (const auto& row : sc.at(key)) {
    std::vector<size_t> r;
    for (const auto& v : row) r.push_back(v.get<size_t>());
    table.push_back(std::move(r));
  }
  return GroupAction::on_group(acting, target, std::move(table));
}

void run_patch_drill(const nlohmann::json& sc, Report& rep, const ExactConfig& cfg) {
  PatchingData data;
  data.field = json_to_field(sc.value("field", nlohmann::json("eisenstein")));
  data.order = sc.value("order", 32u);
  // K_0 enters through the Galois realization; the rationality checks are
  // specialized to K_0 = Q, which is the only accepted subfield spec.
  if (sc.contains("subfield") && sc.at("subfield") != nlohmann::json("rational"))
    throw SchemaError("subfield: only \"rational\" is supported");

  FiniteGroup gamma = group_from(sc, "gamma", 1);
  std::vector<size_t> auto_of;
  if (sc.contains("gamma_action")) {
    for (const auto& v : sc.at("gamma_action")) auto_of.push_back(v.get<size_t>());
  } else {
    for (size_t g = 0; g < gamma.order(); ++g) auto_of.push_back(g);
  }
  data.gal = GaloisRealization::create(*data.field, gamma, auto_of);

  data.H = group_from(sc, "H", 1);
  data.gamma_on_H = action_from(sc, "action_on_H", data.gal.gamma, data.H);
  data.G1 = group_from(sc, "G1", 1);
  data.g1_on_H = action_from(sc, "action_g1_on_H", data.G1, data.H);
  data.gamma_on_G1 = action_from(sc, "gamma_on_G1", data.gal.gamma, data.G1);

  // J enumerates the elements of H; labels are the H element labels.
  std::vector<std::string> j_labels;
  for (size_t x = 0; x < data.H.order(); ++x) j_labels.push_back(data.H.label(x));
  data.index = build_index(j_labels, data.gal.gamma);

  std::vector<size_t> listing(data.H.order());
  if (sc.contains("tau_listing")) {
    listing.clear();
    for (const auto& v : sc.at("tau_listing")) listing.push_back(v.get<size_t>());
  } else {
    for (size_t x = 0; x < data.H.order(); ++x) listing[x] = x;
  }
  data.tau = assign_generators(data.H, listing, data.index, data.gamma_on_H);

  IntegerElement a1 = sc.contains("a1")
                          ? json_to_int_element(sc.at("a1"), *data.field)
                          : data.field->from_integer(2);
  if (sc.contains("branch")) {
    data.branch.clear();
    for (const auto& b : sc.at("branch"))
      data.branch.push_back(json_to_int_element(b, *data.field));
    if (data.branch.size() != data.index.size())
      throw SchemaError("branch element count must equal |I|");
  } else {
    data.branch = choose_branch_elements(*data.field, data.gal, a1, data.index,
                                         sc.value("search_height", 8u), cfg);
  }
  {
    nlohmann::json bj = nlohmann::json::array();
    for (const auto& b : data.branch) bj.push_back(int_element_to_json(b));
    rep.scenario_echo["branch_elements"] = bj;
  }

  // Kummer data per j over D_j' (base a_j), with k = order of tau_j.
  for (size_t j = 0; j < data.index.num_j(); ++j) {
    size_t i = data.index.pair_index(j, data.gal.gamma.identity());
    unsigned k = static_cast<unsigned>(data.H.element_order(data.tau[i]));
    data.kummer_list.push_back(
        make_kummer_data(k, data.branch[i], data.field, data.order, cfg));
  }

  unsigned spots = sc.value("spot_checks", 3u);
  uint64_t seed = sc.value("seed", 1u);
  auto entries = validate_patching(data, spots, seed, cfg);
  rep.entries.insert(rep.entries.end(), entries.begin(), entries.end());
}

}  // namespace

Report execute_scenario(nlohmann::json scenario, const ScenarioOverrides& ov) {
  Report rep;
  auto t0 = std::chrono::steady_clock::now();
  try {
    if (!scenario.is_object() || !scenario.contains("kind"))
      throw SchemaError("scenario must be an object with a kind");
    if (ov.order) scenario["order"] = *ov.order;
    if (ov.seed) scenario["seed"] = *ov.seed;
    if (ov.field) scenario["field"] = *ov.field;
    if (ov.precision_cap) scenario["precision_cap"] = *ov.precision_cap;
    if (ov.jobs) scenario["jobs"] = *ov.jobs;
    rep.scenario_echo = scenario;

    ExactConfig cfg = default_config();
    if (scenario.contains("precision_cap"))
      cfg.prec_cap = scenario["precision_cap"].get<unsigned>();
    else if (const char* env = std::getenv("ARITHDISC_PRECISION_CAP"))
      cfg.prec_cap = static_cast<unsigned>(std::stoul(env));
    if (scenario.contains("jobs")) cfg.jobs = scenario["jobs"].get<unsigned>();

    std::string kind = scenario.at("kind").get<std::string>();
    if (kind == "hensel")
      run_hensel(scenario, rep, cfg);
    else if (kind == "kummer")
      run_kummer(scenario, rep, cfg);
    else if (kind == "wdiv")
      run_wdiv(scenario, rep, cfg);
    else if (kind == "split")
      run_split(scenario, rep, cfg);
    else if (kind == "factor")
      run_factor(scenario, rep, cfg);
    else if (kind == "root")
      run_root(scenario, rep, cfg);
    else if (kind == "patch-drill")
      run_patch_drill(scenario, rep, cfg);
    else
      throw SchemaError("unknown scenario kind: " + kind);
  } catch (const SchemaError& e) {
    rep.entries.push_back({"scenario/schema", CheckStatus::ErrorStatus, e.what()});
  } catch (const Error& e) {
    rep.entries.push_back({"scenario/error", CheckStatus::ErrorStatus, e.what()});
  } catch (const std::exception& e) {
    rep.entries.push_back({"scenario/error", CheckStatus::ErrorStatus, e.what()});
  }
  rep.elapsed_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

Report execute_scenario_file(const std::string& path, const ScenarioOverrides& ov) {
  std::ifstream in(path);
  if (!in) {
    Report rep;
    rep.entries.push_back(
        {"scenario/schema", CheckStatus::ErrorStatus, "cannot open " + path});
    return rep;
  }
  nlohmann::json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    Report rep;
    rep.scenario_echo = {{"path", path}};
    rep.entries.push_back({"scenario/schema", CheckStatus::ErrorStatus,
                           std::string("parse error: ") + e.what()});
    return rep;
  }
  return execute_scenario(std::move(j), ov);
}

}  // namespace arithdisc

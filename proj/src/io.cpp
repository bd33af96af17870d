#include "skinlab/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "skinlab/util.hpp"

namespace skinlab {

std::string content_hash(const Json& j) {
  const std::string text = j.dump();
  return hex64(fnv1a(text.data(), text.size()));
}

std::string content_hash_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidArgument("content_hash_file: cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  const std::string text = os.str();
  return hex64(fnv1a(text.data(), text.size()));
}

void write_text_atomic(const std::string& path, const std::string& text) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw InvalidArgument("write_text_atomic: cannot open " + tmp);
    out << text;
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0)
    throw InvalidArgument("write_text_atomic: rename failed for " + path);
}

void write_json_atomic(const std::string& path, const Json& j) {
  write_text_atomic(path, j.dump(2) + "\n");
}

Json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("read_json: cannot open " + path);
  Json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw InvalidArgument(std::string("read_json: parse error in ") + path + ": " + e.what());
  }
  return j;
}

Json surface_to_json(const DiscreteHypersurface& h) {
  Json j;
  j["kind"] = h.kind;
  j["dim"] = h.dim;
  Json verts = Json::array();
  for (int v = 0; v < h.vertex_count(); ++v) {
    Json row = Json::array();
    for (int k = 0; k < h.dim; ++k) row.push_back(h.position(v)[k]);
    verts.push_back(std::move(row));
  }
  j["vertices"] = std::move(verts);
  Json edges = Json::array();
  for (const Edge& e : h.edges) edges.push_back(Json::array({e.u, e.v, e.len}));
  j["edges"] = std::move(edges);
  j["a_norm"] = h.a_norm;
  Json proxy = Json::array();
  for (const auto& [v, off] : h.sigma_proxy) proxy.push_back(Json::array({v, off}));
  j["sigma_proxy"] = std::move(proxy);
  j["outer_boundary"] = h.outer_boundary;
  j["scale"] = h.scale;
  return j;
}

DiscreteHypersurface surface_from_json(const Json& j) {
  DiscreteHypersurface h;
  try {
    h.kind = j.at("kind").get<std::string>();
    h.dim = j.at("dim").get<int>();
    for (const auto& row : j.at("vertices"))
      for (const auto& x : row) h.positions.push_back(x.get<double>());
    for (const auto& e : j.at("edges"))
      h.edges.push_back({e.at(0).get<int>(), e.at(1).get<int>(), e.at(2).get<double>()});
    h.a_norm = j.at("a_norm").get<std::vector<double>>();
    for (const auto& p : j.at("sigma_proxy"))
      h.sigma_proxy.emplace_back(p.at(0).get<int>(), p.at(1).get<double>());
    h.outer_boundary = j.at("outer_boundary").get<std::vector<int>>();
    h.scale = j.at("scale").get<double>();
  } catch (const Json::exception& e) {
    throw InvalidArgument(std::string("surface_from_json: schema mismatch: ") + e.what());
  }
  h.validate();
  return h;
}

Json skin_to_json(const SkinField& f) {
  Json j;
  j["surface_id"] = f.surface_id;
  j["alpha"] = f.alpha;
  j["provenance"] = provenance_tag(f.provenance, f.combine_c);
  j["values"] = f.values;
  j["lipschitz_bound"] = f.lipschitz_bound;
  return j;
}

SkinField skin_from_json(const Json& j, const DiscreteHypersurface& h) {
  SkinField f;
  try {
    f.surface_id = j.at("surface_id").get<std::string>();
    f.alpha = j.at("alpha").get<double>();
    const std::string tag = j.at("provenance").get<std::string>();
    if (tag == "exact") f.provenance = Provenance::Exact;
    else if (tag == "oracle") f.provenance = Provenance::Oracle;
    else if (tag == "smoothed") f.provenance = Provenance::Smoothed;
    else if (tag == "restricted") f.provenance = Provenance::Restricted;
    else f.provenance = Provenance::Combined;
    f.values = j.at("values").get<std::vector<double>>();
    f.lipschitz_bound = j.at("lipschitz_bound").get<double>();
  } catch (const Json::exception& e) {
    throw InvalidArgument(std::string("skin_from_json: schema mismatch: ") + e.what());
  }
  if (static_cast<int>(f.values.size()) != h.vertex_count())
    throw InvalidArgument("skin_from_json: field size does not match the surface");
  f.delta.resize(f.values.size());
  for (size_t v = 0; v < f.values.size(); ++v)
    f.delta[v] = f.values[v] > 0.0 ? 1.0 / f.values[v] : kInf;
  return f;
}

Json cover_to_json(const BallCover& c) {
  Json j;
  j["surface_id"] = c.surface_id;
  j["skin_id"] = c.skin_id;
  j["xi"] = c.xi;
  j["centers"] = c.centers;
  j["theta"] = c.theta;
  j["family"] = c.family;
  if (c.qt_margin.has_value())
    j["qt_margin"] = *c.qt_margin;
  else
    j["qt_margin"] = nullptr;
  Json stats;
  stats["families"] = c.stats.families;
  stats["covering_max"] = c.stats.covering_max;
  stats["covering_hist"] = c.stats.covering_hist;
  stats["exclusion_violations"] = c.stats.exclusion_violations;
  stats["uncovered"] = c.stats.uncovered;
  j["stats"] = std::move(stats);
  return j;
}

BallCover cover_from_json(const Json& j) {
  BallCover c;
  try {
    c.surface_id = j.at("surface_id").get<std::string>();
    c.skin_id = j.at("skin_id").get<std::string>();
    c.xi = j.at("xi").get<double>();
    c.centers = j.at("centers").get<std::vector<int>>();
    c.theta = j.at("theta").get<std::vector<double>>();
    c.family = j.at("family").get<std::vector<int>>();
    if (!j.at("qt_margin").is_null()) c.qt_margin = j.at("qt_margin").get<double>();
    const Json& stats = j.at("stats");
    c.stats.families = stats.at("families").get<int>();
    c.stats.covering_max = stats.at("covering_max").get<int>();
    c.stats.covering_hist = stats.at("covering_hist").get<std::vector<int>>();
    c.stats.exclusion_violations = stats.at("exclusion_violations").get<int>();
    c.stats.uncovered = stats.at("uncovered").get<int>();
  } catch (const Json::exception& e) {
    throw InvalidArgument(std::string("cover_from_json: schema mismatch: ") + e.what());
  }
  return c;
}

Json certificate_to_json(const UniformCurveCertificate& c, const std::string& surface_id) {
  Json j;
  j["surface_id"] = surface_id;
  j["p"] = c.p;
  j["q"] = c.q;
  j["method"] = c.method == CurveMethod::Pipeline ? "pipeline" : "constrained_search";
  j["path"] = c.path;
  j["length"] = c.length;
  j["c_quasi"] = c.c_quasi;
  j["c_cone"] = c.c_cone;
  j["c"] = c.c;
  return j;
}

Json axiom_report_to_json(const AxiomReport& r) {
  Json j;
  j["s1_pass"] = r.s1_pass;
  j["s2_pass"] = r.s2_pass;
  j["s2_scaling_residual"] = r.s2_scaling_residual;
  j["s4_lipschitz_constant"] = r.s4_lipschitz_constant;
  j["s5_scaling_residual"] = r.s5_scaling_residual;
  j["notes"] = r.notes;
  return j;
}

Json spectral_report_to_json(const SpectralReport& r) {
  Json j;
  j["lambda_min"] = r.lambda_min;
  j["iterations"] = r.iterations;
  j["residual"] = r.residual;
  j["converged"] = r.converged;
  j["band"] = r.band;
  j["refinement_level"] = r.refinement_level;
  return j;
}

Json domain_to_json(const SkinDomain& d, const DomainReport& rep, const std::string& surface_id) {
  Json j;
  j["surface_id"] = surface_id;
  j["a"] = d.a;
  j["members"] = d.members;
  j["hull"] = d.hull;
  j["cover_centers"] = d.cover_centers;
  j["iota"] = rep.iota;
  j["kappa"] = rep.kappa;
  j["alpha_prime"] = rep.alpha_prime;
  j["hull_sandwich"] = rep.hull_sandwich;
  j["bubble_sandwich"] = rep.bubble_sandwich;
  j["connected"] = rep.connected;
  j["pass"] = rep.pass;
  return j;
}

std::string skin_radial_csv(const DiscreteHypersurface& h, const SkinField& f) {
  std::ostringstream os;
  os << "vertex,r,a_norm,value,delta\n";
  os.precision(17);
  for (int v = 0; v < h.vertex_count(); ++v)
    os << v << ',' << h.radius(v) << ',' << h.a_norm[v] << ',' << f.values[v] << ','
       << f.delta[v] << '\n';
  return os.str();
}

std::string curve_scatter_csv(const DiscreteHypersurface& h,
                              const std::vector<UniformCurveCertificate>& certs) {
  std::ostringstream os;
  os << "pair,d,length,c\n";
  os.precision(17);
  const Adjacency& adj = surface_adjacency(h);
  for (size_t i = 0; i < certs.size(); ++i) {
    const auto& c = certs[i];
    const std::vector<double> dist = dijkstra(adj, {c.p});
    os << i << ',' << dist[c.q] << ',' << c.length << ',' << c.c << '\n';
  }
  return os.str();
}

std::string band_sweep_csv(const std::vector<std::pair<double, double>>& band_lambda) {
  std::ostringstream os;
  os << "band,lambda\n";
  os.precision(17);
  for (const auto& [b, l] : band_lambda) os << b << ',' << l << '\n';
  return os.str();
}

void RunConfig::validate() const {
  for (double a : alpha_list)
    if (!(a > 0.0)) throw InvalidArgument("config: alpha_list entries must be positive");
  if (xi < 0.0) throw InvalidArgument("config: xi must be >= 0");
  if (!(tau_target > 0.0 && tau_target < 1.0))
    throw InvalidArgument("config: tau_target must lie in (0,1)");
  for (double b : band_sweep)
    if (b < 0.0) throw InvalidArgument("config: band widths must be >= 0");
  if (pair_budget < 1) throw InvalidArgument("config: pair_budget must be >= 1");
  if (quadruple_budget < 1) throw InvalidArgument("config: quadruple_budget must be >= 1");
  if (samples < 4) throw InvalidArgument("config: samples must be >= 4");
}

Json run_config_to_json(const RunConfig& c) {
  Json j;
  j["alpha_list"] = c.alpha_list;
  j["xi"] = c.xi;
  j["tau_target"] = c.tau_target;
  j["band_sweep"] = c.band_sweep;
  j["pair_budget"] = c.pair_budget;
  j["quadruple_budget"] = c.quadruple_budget;
  j["samples"] = c.samples;
  j["output_dir"] = c.output_dir;
  return j;
}

RunConfig run_config_from_json(const Json& j) {
  RunConfig c;
  try {
    if (j.contains("alpha_list")) c.alpha_list = j.at("alpha_list").get<std::vector<double>>();
    if (j.contains("xi")) c.xi = j.at("xi").get<double>();
    if (j.contains("tau_target")) c.tau_target = j.at("tau_target").get<double>();
    if (j.contains("band_sweep")) c.band_sweep = j.at("band_sweep").get<std::vector<double>>();
    if (j.contains("pair_budget")) c.pair_budget = j.at("pair_budget").get<int>();
    if (j.contains("quadruple_budget"))
      c.quadruple_budget = j.at("quadruple_budget").get<long long>();
    if (j.contains("samples")) c.samples = j.at("samples").get<int>();
    if (j.contains("output_dir")) c.output_dir = j.at("output_dir").get<std::string>();
  } catch (const Json::exception& e) {
    throw InvalidArgument(std::string("run_config_from_json: schema mismatch: ") + e.what());
  }
  c.validate();
  return c;
}

}  // namespace skinlab

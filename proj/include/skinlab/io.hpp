#pragma once

#include <string>
#include <vector>

#include "skinlab/cover.hpp"
#include "skinlab/skin.hpp"
#include "skinlab/spectral.hpp"
#include "skinlab/surface.hpp"
#include "skinlab/types.hpp"
#include "skinlab/uniformity.hpp"

#include <json.hpp>

namespace skinlab {

using Json = nlohmann::ordered_json;  // fixed field order, diff-able artifacts

// Content hash of a serialized artifact (FNV-1a over the JSON text).
std::string content_hash(const Json& j);
std::string content_hash_file(const std::string& path);

// Atomic write: temp file in the same directory, then rename.
void write_text_atomic(const std::string& path, const std::string& text);
void write_json_atomic(const std::string& path, const Json& j);
Json read_json(const std::string& path);

// Mesh JSON, field order: kind, dim, vertices, edges, a_norm, sigma_proxy,
// outer_boundary, scale.
Json surface_to_json(const DiscreteHypersurface& h);
DiscreteHypersurface surface_from_json(const Json& j);

// SkinField JSON: surface_id, alpha, provenance, values, lipschitz_bound.
Json skin_to_json(const SkinField& f);
SkinField skin_from_json(const Json& j, const DiscreteHypersurface& h);

// Cover JSON: surface_id, skin_id, xi, centers, theta, family, qt_margin, stats.
Json cover_to_json(const BallCover& c);
BallCover cover_from_json(const Json& j);

// Certificate JSON: surface_id, p, q, method, path, length, c_quasi, c_cone, c.
Json certificate_to_json(const UniformCurveCertificate& c, const std::string& surface_id);

Json axiom_report_to_json(const AxiomReport& r);
Json spectral_report_to_json(const SpectralReport& r);
Json domain_to_json(const SkinDomain& d, const DomainReport& rep, const std::string& surface_id);

// CSV emitters with stable column order per kind.
std::string skin_radial_csv(const DiscreteHypersurface& h, const SkinField& f);
std::string curve_scatter_csv(const DiscreteHypersurface& h,
                              const std::vector<UniformCurveCertificate>& certs);
std::string band_sweep_csv(const std::vector<std::pair<double, double>>& band_lambda);

// Batch run configuration; round-trips through JSON unchanged.
struct RunConfig {
  std::vector<double> alpha_list{1.0};
  double xi = 0.0;  // 0 selects 0.8 / (1000 * L)
  double tau_target = 0.05;
  std::vector<double> band_sweep{0.0};
  int pair_budget = 100;
  long long quadruple_budget = 200000;
  int samples = 16;
  std::string output_dir = ".";

  void validate() const;  // documented ranges; throws InvalidArgument
};

Json run_config_to_json(const RunConfig& c);
RunConfig run_config_from_json(const Json& j);

}  // namespace skinlab

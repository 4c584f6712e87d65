#include "entrokit/registry.hpp"

namespace entrokit {

namespace {

EstimatorInfo spacing_info(std::string_view name, SpacingId id,
                           std::string_view citation, bool in_tables,
                           std::string_view params = "m in [1, n/2]") {
  EstimatorInfo info;
  info.name = name;
  info.family = Family::Spacing;
  info.citation = citation;
  info.params = params;
  info.multivariate = false;
  info.in_tables = in_tables;
  info.takes_m = true;
  info.takes_k = false;
  info.spacing = id;
  return info;
}

EstimatorInfo kde_info(std::string_view name, KdeId id,
                       std::string_view citation, bool takes_m,
                       std::string_view params, bool multivariate = false) {
  EstimatorInfo info;
  info.name = name;
  info.family = Family::Kde;
  info.citation = citation;
  info.params = params;
  info.multivariate = multivariate;
  info.in_tables = false;
  info.takes_m = takes_m;
  info.takes_k = false;
  info.kde = id;
  return info;
}

EstimatorInfo knn_info(std::string_view name, KnnId id,
                       std::string_view citation, bool takes_k,
                       std::string_view params) {
  EstimatorInfo info;
  info.name = name;
  info.family = Family::Knn;
  info.citation = citation;
  info.params = params;
  info.multivariate = true;
  info.in_tables = false;
  info.takes_m = false;
  info.takes_k = takes_k;
  info.knn = id;
  return info;
}

std::vector<EstimatorInfo> build_registry() {
  std::vector<EstimatorInfo> r;
  r.push_back(spacing_info("HV", SpacingId::HV, "Vasicek (1976)", true));
  r.push_back(spacing_info("HD", SpacingId::HD,
                           "Dudewicz & van der Meulen (1987)", false));
  r.push_back(spacing_info("HE", SpacingId::HE_VANES, "van Es (1992)", true));
  r.push_back(spacing_info("HE1", SpacingId::HE1, "Ebrahimi et al. (1994)", true));
  r.push_back(spacing_info("HE2", SpacingId::HE2, "Ebrahimi et al. (1994)", true,
                           "m in [1, n/2]; optional support bounds a < b "
                           "(default: automatic)"));
  r.push_back(spacing_info("HC", SpacingId::HC, "Correa (1995)", true));
  r.push_back(spacing_info("HW1", SpacingId::HW1,
                           "Wieczorkowski & Grzegorzewski (1999)", true));
  r.push_back(spacing_info("HW2", SpacingId::HW2,
                           "Wieczorkowski & Grzegorzewski (1999)", false,
                           "m in [1, (n-1)/2] (jackknife)"));
  r.push_back(spacing_info("HP", SpacingId::HP_PASHA, "Pasha et al. (2005)", true));
  r.push_back(spacing_info("HPS", SpacingId::HPS_PARK, "Park & Shin (2012)", false));
  r.push_back(spacing_info("HA", SpacingId::HA,
                           "Alizadeh Noughabi & Arghami (2010)", true));
  r.push_back(spacing_info("HZ", SpacingId::HZ, "Zamanzade & Arghami (2011)", true));
  r.push_back(spacing_info("HA1", SpacingId::HA1, "Al-Omari (2014)", true));
  r.push_back(spacing_info("HA2", SpacingId::HA2, "Al-Omari (2015)", true));
  r.push_back(spacing_info("HA3", SpacingId::HA3, "Al-Omari (2016)", true));
  r.push_back(spacing_info("HK1", SpacingId::HK1, "Kohansal & Rezakhah (2016)",
                           false, "m in [1, n/2]; odd ma_window w (default 3)"));
  r.push_back(spacing_info("HK2", SpacingId::HK2, "Kohansal & Rezakhah (2016)",
                           false, "m in [1, n/2]; odd ma_window w (default 3)"));
  r.push_back(spacing_info("HB1", SpacingId::HB1, "Bitaraf et al. (2017)", true,
                           "m in [2, n/2]"));
  r.push_back(spacing_info("HB2", SpacingId::HB2, "Bitaraf et al. (2017)", true,
                           "m in [2, n/2]"));
  r.push_back(spacing_info("HJ", SpacingId::HJ,
                           "Alizadeh Noughabi & Jarrahiferiz (2019)", true));
  r.push_back(spacing_info("HM", SpacingId::HM, "Madukaife (2023)", true,
                           "m in [1, n/2], m != 2"));

  r.push_back(kde_info("HAL", KdeId::HAL, "Ahmad & Lin (1976)", false,
                       "none (normal-scale bandwidth)", /*multivariate=*/true));
  r.push_back(kde_info("HAN", KdeId::HAN, "Alizadeh Noughabi (2010)", true,
                       "m in [1, n/2]"));
  r.push_back(kde_info("HZA1", KdeId::HZA1, "Zamanzade & Arghami (2012)", true,
                       "m in [1, n/2]"));
  r.push_back(kde_info("HZA2", KdeId::HZA2, "Zamanzade & Arghami (2012)", true,
                       "m in [1, n/2]"));
  r.push_back(kde_info("HAN2", KdeId::HAN2,
                       "Alizadeh Noughabi & Alizadeh Noughabi (2013)", true,
                       "m in [1, n/2]"));
  r.push_back(kde_info("HB_EPS", KdeId::HB_EPS, "Bouzebda et al. (2013)", false,
                       "epsilon in (0, 1/2), quadrature panels"));
  r.push_back(kde_info("HBE", KdeId::HBE, "Bouzebda & Elhattab (2014)", false,
                       "epsilon in (0, 1/2)"));

  r.push_back(knn_info("HKL", KnnId::HKL, "Kozachenko & Leonenko (1987)", false,
                       "k fixed to 1"));
  r.push_back(knn_info("HVIC", KnnId::HVIC, "Victor (2002)", false,
                       "k fixed to 1; reports bits"));
  r.push_back(knn_info("HS", KnnId::HS, "Singh et al. (2003)", true,
                       "k in [1, n-1]"));
  r.push_back(knn_info("HN", KnnId::HN, "Nilsson & Kleijn (2004)", false,
                       "k fixed to 1; reports bits"));
  r.push_back(knn_info("HK", KnnId::HK, "Kraskov et al. (2004)", true,
                       "k in [1, n-1]"));
  r.push_back(knn_info("HL", KnnId::HL, "Leonenko et al. (2008)", true,
                       "k in [1, n-1]"));
  return r;
}

}  // namespace

const std::vector<EstimatorInfo>& estimator_registry() {
  static const std::vector<EstimatorInfo> registry = build_registry();
  return registry;
}

const EstimatorInfo* find_estimator(std::string_view name) {
  for (const auto& info : estimator_registry()) {
    if (info.name == name) return &info;
  }
  return nullptr;
}

}  // namespace entrokit

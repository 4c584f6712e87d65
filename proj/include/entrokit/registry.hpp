#pragma once

#include <string_view>
#include <vector>

#include "entrokit/kde.hpp"
#include "entrokit/knn.hpp"
#include "entrokit/spacing.hpp"

namespace entrokit {

enum class Family { Spacing, Kde, Knn };

struct EstimatorInfo {
  std::string_view name;
  Family family;
  std::string_view citation;
  std::string_view params;  // parameter requirements, human-readable
  bool multivariate;        // defined for d > 1
  bool in_tables;           // member of the 16-estimator spacing table set
  bool takes_m;
  bool takes_k;
  SpacingId spacing{};
  KdeId kde{};
  KnnId knn{};
};

const std::vector<EstimatorInfo>& estimator_registry();

// nullptr when the name is unknown.
const EstimatorInfo* find_estimator(std::string_view name);

}  // namespace entrokit

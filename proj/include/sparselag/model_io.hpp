#pragma once

#include "sparselag/csv.hpp"
#include "sparselag/tuning.hpp"

#include <cstdint>
#include <string>

namespace sparselag {

inline constexpr int kModelFormatMajor = 1;
inline constexpr int kModelFormatMinor = 0;

/// Everything a later `forecast`, `evaluate` or `coefficients` run needs:
/// the fitted model, the columns it was built from and the split it used.
/// The IC table is written separately and is not part of the model file.
struct ModelFile {
    SeriesColumns columns;
    SrlFit fit;
    double train_fraction = 0.9;
    std::size_t n_total = 0;
    std::uint64_t seed = 1;
};

/// Self-describing JSON text, stable byte for byte for identical inputs.
std::string model_to_json(const ModelFile& model);

/// Throws ErrorCode::model_format on malformed input or an unknown major version.
ModelFile model_from_json(const std::string& text);

void save_model(const ModelFile& model, const std::string& path);
ModelFile load_model(const std::string& path);

}  // namespace sparselag

#pragma once

#include <iosfwd>
#include <memory>
#include <optional>
#include <string>

#include "ttpred/features.hpp"
#include "ttpred/models/classifier.hpp"

namespace ttpred {

// Self-describing model document: family tag, hyperparameters, seed and the
// fitted parameters (weights / support vectors / nested tree nodes). A saved
// model may also carry the standardizer fitted alongside it so it can be
// applied to raw feature vectors. Round-trips reproduce identical
// predictions.
struct SavedModel {
    std::unique_ptr<Classifier> classifier;
    std::optional<Standardizer> standardizer;
};

std::string model_to_json(const Classifier& c,
                          const std::optional<Standardizer>& standardizer = std::nullopt);
SavedModel model_from_json(const std::string& text);

void save_model_file(const std::string& path, const Classifier& c,
                     const std::optional<Standardizer>& standardizer = std::nullopt);
SavedModel load_model_file(const std::string& path);

}  // namespace ttpred

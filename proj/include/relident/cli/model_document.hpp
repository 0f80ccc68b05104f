#ifndef RELIDENT_CLI_MODEL_DOCUMENT_HPP
#define RELIDENT_CLI_MODEL_DOCUMENT_HPP

#include "relident/diffalg/model.hpp"

#include <json.hpp>

#include <filesystem>
#include <string>

namespace relident {

struct ModelDocument {
    Model model;
    /// The document asks for initial-condition augmentation.
    bool initial_conditions = false;
};

/// Reads a model document. JSON syntax errors and malformed expressions raise
/// ParseError with a line and column; identifier problems raise ModelError.
ModelDocument parse_model_document(std::string_view text);
ModelDocument load_model_document(const std::filesystem::path& path);

/// Inverse of parse_model_document up to whitespace.
nlohmann::ordered_json model_to_json(const Model& model, bool initial_conditions = false);

}  // namespace relident

#endif

#include "relident/cli/model_document.hpp"

#include "relident/algebra/parse.hpp"

#include <fstream>
#include <sstream>

namespace relident {

namespace {

using Json = nlohmann::ordered_json;

// Line and column (1-based) of a byte offset.
std::pair<int, int> locate(std::string_view text, std::size_t offset) {
    int line = 1;
    int column = 1;
    for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            column = 1;
        } else {
            ++column;
        }
    }
    return {line, column};
}

std::vector<std::string> string_list(const Json& doc, const char* key, bool required) {
    if (!doc.contains(key)) {
        if (required) throw ParseError(std::string("missing key '") + key + "'", 1, 1);
        return {};
    }
    const Json& v = doc.at(key);
    if (!v.is_array()) throw ParseError(std::string("'") + key + "' must be a list of names", 1, 1);
    std::vector<std::string> out;
    for (const auto& e : v) {
        if (!e.is_string()) throw ParseError(std::string("'") + key + "' must contain only strings", 1, 1);
        out.push_back(e.get<std::string>());
    }
    return out;
}

// Expression errors carry the position inside the expression string.
RationalExpr expression(const std::string& where, const Json& v) {
    if (!v.is_string()) throw ParseError(where + ": expected an expression string", 1, 1);
    try {
        return RationalExpr::from_fraction(parse_fraction(v.get<std::string>()));
    } catch (const ParseError& e) {
        throw ParseError(where + ": " + e.message(), e.line(), e.column());
    } catch (const std::domain_error& e) {
        throw ParseError(where + ": " + e.what(), 1, 1);
    }
}

}  // namespace

ModelDocument parse_model_document(std::string_view text) {
    Json doc;
    try {
        doc = Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        const auto [line, column] = locate(text, e.byte > 0 ? e.byte - 1 : 0);
        throw ParseError("invalid JSON", line, column);
    }
    if (!doc.is_object()) throw ParseError("model document must be a JSON object", 1, 1);

    ModelDocument out;
    Model& m = out.model;
    m.states = string_list(doc, "states", true);
    m.inputs = string_list(doc, "inputs", false);
    m.params = string_list(doc, "params", true);

    if (!doc.contains("odes") || !doc.at("odes").is_object()) throw ParseError("'odes' must map states to expressions", 1, 1);
    const Json& odes = doc.at("odes");
    for (const auto& s : m.states) {
        if (!odes.contains(s)) throw ModelError("no equation for state '" + s + "'");
        m.dynamics.push_back(expression("odes." + s, odes.at(s)));
    }
    for (const auto& [key, _] : odes.items()) {
        if (std::find(m.states.begin(), m.states.end(), key) == m.states.end()) {
            throw ModelError("equation for undeclared state '" + key + "'");
        }
    }

    if (!doc.contains("outputs") || !doc.at("outputs").is_object()) {
        throw ParseError("'outputs' must map output names to expressions", 1, 1);
    }
    for (const auto& [name, e] : doc.at("outputs").items()) m.outputs.push_back({name, expression("outputs." + name, e)});

    for (const auto& c : string_list(doc, "constraints", false)) {
        try {
            for (auto& r : parse_relation(c)) m.constraints.add(std::move(r));
        } catch (const ParseError& e) {
            throw ParseError("constraint '" + c + "': " + e.message(), e.line(), e.column());
        }
    }
    if (doc.contains("initial_conditions")) {
        if (!doc.at("initial_conditions").is_boolean()) throw ParseError("'initial_conditions' must be a boolean", 1, 1);
        out.initial_conditions = doc.at("initial_conditions").get<bool>();
    }
    m.validate();
    return out;
}

ModelDocument load_model_document(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ModelError("cannot read " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_model_document(buf.str());
}

Json model_to_json(const Model& model, bool initial_conditions) {
    Json doc;
    doc["states"] = model.states;
    if (!model.inputs.empty()) doc["inputs"] = model.inputs;
    doc["params"] = model.params;
    Json odes = Json::object();
    for (std::size_t i = 0; i < model.states.size(); ++i) odes[model.states[i]] = model.dynamics[i].to_string();
    doc["odes"] = odes;
    Json outputs = Json::object();
    for (const auto& o : model.outputs) outputs[o.name] = o.expr.to_string();
    doc["outputs"] = outputs;
    Json constraints = Json::array();
    for (const auto& r : model.constraints.relations) constraints.push_back(r.to_string());
    doc["constraints"] = constraints;
    if (initial_conditions) doc["initial_conditions"] = true;
    return doc;
}

}  // namespace relident

#include "relident/cli/pipeline.hpp"

#include "relident/algebra/parse.hpp"
#include "relident/cli/model_document.hpp"
#include "relident/identtree/tree.hpp"

#include <cstdlib>
#include <sstream>

namespace relident {

using Json = nlohmann::ordered_json;

namespace {

constexpr const char* unverified_mark = "hypothesis unverified";

struct Analysis {
    Model model;
    IOResult io;
};

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

Json io_json(const IOResult& io) {
    Json polys = Json::array();
    for (const auto& p : io.polys) {
        Json terms = Json::array();
        for (const auto& t : p.terms) {
            Json term;
            term["coefficient"] = t.coefficient.to_string();
            term["monomials"] = t.monomials.to_string();
            terms.push_back(term);
        }
        Json entry;
        entry["output"] = p.output;
        entry["order"] = p.order;
        entry["polynomial"] = p.polynomial.to_string();
        entry["denominator"] = p.denominator.to_string();
        entry["normalization"] = p.normalization;
        entry["terms"] = terms;
        entry["m0"] = p.m0.to_string();
        polys.push_back(entry);
    }
    Json side = Json::array();
    for (const auto& r : io.side_conditions) side.push_back(r.to_string());
    Json out;
    out["io_polynomials"] = polys;
    out["side_conditions"] = side;
    out["selection_rule"] = io.selection_rule;
    return out;
}

std::string io_text(const IOResult& io) {
    std::ostringstream out;
    for (const auto& p : io.polys) {
        out << p.output << " (order " << p.order << "): " << p.polynomial.to_string();
        if (!p.denominator.is_constant()) out << "  / (" << p.denominator.to_string() << ")";
        out << "\n";
    }
    for (const auto& r : io.side_conditions) out << "side condition: " << r.to_string() << "\n";
    return out.str();
}

Json summary_json(const ExhaustiveSummary& s) {
    Json reps = Json::array();
    for (const auto& r : s.representatives) reps.push_back(r.to_string());
    Json side = Json::array();
    for (const auto& r : s.side_conditions) side.push_back(r.to_string());
    Json out;
    out["raw_count"] = s.entries.size();
    out["representative_count"] = s.representatives.size();
    out["representatives"] = reps;
    out["side_conditions"] = side;
    return out;
}

std::string summary_text(const ExhaustiveSummary& s) {
    std::ostringstream out;
    out << s.entries.size() << " coefficients, " << s.representatives.size() << " representatives\n";
    for (const auto& r : s.representatives) out << "  " << r.to_string() << "\n";
    return out.str();
}

struct WronskianReport {
    bool pass = true;
    Json json = Json::array();
    std::string text;
};

WronskianReport check_all(const IOResult& io, const RunConfig& config) {
    WronskianReport report;
    for (const auto& p : io.polys) {
        const auto w = wronskian_check(p, config.wronskian_trials, config.seed);
        report.pass = report.pass && w.pass;
        Json entry;
        entry["output"] = p.output;
        entry["size"] = w.size;
        entry["pass"] = w.pass;
        report.json.push_back(entry);
        report.text += p.output + ": Wronskian of size " + std::to_string(w.size) + (w.pass ? " nonzero\n" : " vanishes\n");
    }
    return report;
}

std::set<std::string> known_set(const RunConfig& config, const Model& model) {
    std::set<std::string> known;
    for (const auto& k : config.known) {
        if (std::find(model.params.begin(), model.params.end(), k) == model.params.end()) {
            throw ModelError("unknown parameter in --known: " + k);
        }
        known.insert(k);
    }
    if (std::find(model.params.begin(), model.params.end(), config.target) == model.params.end()) {
        throw ModelError("unknown parameter in --target: " + config.target);
    }
    return known;
}

RunOutput run(const RunConfig& config) {
    RunOutput result;
    auto doc = load_model_document(config.model_path);
    Model model = doc.model;
    if (config.with_initial_conditions || doc.initial_conditions) model = augment_initial_conditions(model);

    IOOptions io_options;
    io_options.max_prolong = config.max_prolong;
    io_options.seed = config.seed;
    const IOResult io = io_polynomials(model, io_options);

    const bool json = config.format == OutputFormat::Json;
    if (config.command == Command::IoPolys) {
        result.out = json ? dump(io_json(io)) : io_text(io);
        return result;
    }
    const auto summary = exhaustive_summary(io.polys, io.side_conditions);
    if (config.command == Command::Summary) {
        result.out = json ? dump(summary_json(summary)) : summary_text(summary);
        return result;
    }
    const auto wronskian = check_all(io, config);
    if (config.command == Command::CheckWronskian) {
        result.out = json ? dump(wronskian.json) : wronskian.text;
        if (!wronskian.pass) result.exit_code = exit_code::wronskian_failure;
        return result;
    }
    std::string watermark;
    if (!wronskian.pass) {
        if (!config.ignore_wronskian) {
            result.err = wronskian.text + "the summary may not characterize identifiability; rerun with "
                                          "--ignore-wronskian to build the tree anyway\n";
            result.exit_code = exit_code::wronskian_failure;
            return result;
        }
        watermark = unverified_mark;
    }

    TreeOptions options;
    options.semialg.seed = config.seed;
    options.semialg.budget_secs = config.budget_secs;
    options.semialg.witness_height = config.witness_height;
    IdentifiabilityOracle oracle(make_context(model.param_vars(), summary, model.constraints, !config.no_constraints),
                                 options);

    if (config.command == Command::Witness) {
        const auto known = known_set(config, model);
        const auto r = oracle.relative_identifiability(known, config.target);
        Json out;
        if (!watermark.empty()) out["watermark"] = watermark;
        out["status"] = to_string(r.status);
        if (r.status == Identifiability::NotIdentifiable) {
            out["witness"] = explain_witness(oracle, known, config.target);
        } else {
            out["verdict"] = r.verdict.to_json();
        }
        result.out = dump(out);
        if (r.status == Identifiability::Undetermined) result.exit_code = exit_code::tree_partial;
        return result;
    }

    const IdentTree tree = identifiability_tree(oracle);
    switch (config.format) {
        case OutputFormat::Json: result.out = dump(tree_to_json(tree, watermark)); break;
        case OutputFormat::Dot: result.out = tree_to_dot(tree, watermark); break;
        case OutputFormat::Text:
            result.out = tree_to_text(tree) + "\n";
            if (!watermark.empty()) result.out += "(" + watermark + ")\n";
            for (const auto& u : tree.undetermined) {
                std::string ks;
                for (const auto& k : u.known) ks += (ks.empty() ? "" : ",") + k;
                result.out += "undetermined: " + u.candidate + " given {" + ks + "}\n";
            }
            break;
    }
    if (config.stats) {
        const auto bound = verify_complexity_bound(tree);
        result.err += "emptiness tests: " + std::to_string(tree.emptiness_tests) +
                      ", cache hits: " + std::to_string(tree.cache_hits) + ", bound: " + std::to_string(bound.bound) +
                      " (m=" + std::to_string(bound.m) + ", nu=" + std::to_string(bound.nu) + ")\n";
    }
    if (tree.partial()) result.exit_code = exit_code::tree_partial;
    return result;
}

}  // namespace

double default_budget_secs() {
    if (const char* env = std::getenv(budget_env_var)) {
        char* end = nullptr;
        const double v = std::strtod(env, &end);
        if (end != env && *end == '\0' && v > 0) return v;
    }
    return 60.0;
}

RunOutput run_pipeline(const RunConfig& config) {
    try {
        return run(config);
    } catch (const ParseError& e) {
        return {exit_code::parse_error, "", std::string("parse error: ") + e.what() + "\n"};
    } catch (const ModelError& e) {
        return {exit_code::parse_error, "", std::string("model error: ") + e.what() + "\n"};
    } catch (const EliminationIncomplete& e) {
        return {exit_code::elimination_failure, "", std::string("elimination failed: ") + e.what() + "\n"};
    } catch (const ResourceExceeded& e) {
        return {exit_code::elimination_failure, "", std::string("resource limit: ") + e.what() + "\n"};
    }
}

}  // namespace relident

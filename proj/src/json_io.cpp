#include "tfkit/json_io.hpp"

#include "tfkit/errors.hpp"

#include <sstream>
#include <stdexcept>

namespace tfkit {

namespace {

Json components_to_json(const Components& c) {
    Json out = Json::array();
    for (int v : c) out.push_back(v);
    return out;
}

Components components_from_json(const Json& j) {
    Components c;
    for (const auto& v : j) c.push_back(v.get<int>());
    return c;
}

void require_schema(const Json& j) {
    if (j.contains("schema") && j["schema"].get<std::string>() != kSchemaVersion) {
        throw std::invalid_argument("unsupported schema version " +
                                    j["schema"].get<std::string>());
    }
}

} // namespace

Json behavior_to_json(const Behavior& b) {
    const auto& shape = b.shape();
    Json entries = Json::array();
    for (std::size_t i = 0; i < shape.joint_input_count(); ++i) {
        for (std::size_t j = 0; j < shape.joint_output_count(); ++j) {
            if (b.at(i, j) == 0) continue;
            entries.push_back({{"input", components_to_json(shape.decode_input(i))},
                               {"output", components_to_json(shape.decode_output(j))},
                               {"p", rational_to_string(b.at(i, j))}});
        }
    }
    return {{"schema", kSchemaVersion},
            {"type", "behavior"},
            {"shape", shape.to_text()},
            {"entries", std::move(entries)}};
}

Behavior behavior_from_json(const Json& j) {
    require_schema(j);
    const auto shape = ExperimentShape::parse(j.at("shape").get<std::string>());
    const std::size_t outputs = shape.joint_output_count();
    std::vector<Rational> table(shape.joint_input_count() * outputs, Rational(0));
    std::vector<bool> seen(table.size(), false);
    for (const auto& entry : j.at("entries")) {
        const auto input = shape.encode_input(components_from_json(entry.at("input")));
        const auto output = shape.encode_output(components_from_json(entry.at("output")));
        if (seen[input * outputs + output]) {
            throw std::invalid_argument("duplicate behavior entry for input " +
                                        std::to_string(input) + ", output " +
                                        std::to_string(output));
        }
        seen[input * outputs + output] = true;
        table[input * outputs + output] = rational_from_string(entry.at("p").get<std::string>());
    }
    return Behavior(shape, std::move(table));
}

Json distribution_to_json(const TFDistribution& d) {
    Json atoms = Json::array();
    for (const auto& [key, w] : d.weights()) {
        atoms.push_back({{"tf", key}, {"w", rational_to_string(w)}});
    }
    return {{"schema", kSchemaVersion},
            {"type", "tf_distribution"},
            {"shape", d.shape().to_text()},
            {"atoms", std::move(atoms)}};
}

TFDistribution distribution_from_json(const Json& j) {
    require_schema(j);
    TFDistribution d(ExperimentShape::parse(j.at("shape").get<std::string>()));
    for (const auto& atom : j.at("atoms")) {
        d.add(atom.at("tf").get<std::string>(),
              rational_from_string(atom.at("w").get<std::string>()));
    }
    return d;
}

Json joint_distribution_to_json(const JointTFDistribution& d) {
    Json atoms = Json::array();
    for (const auto& [keys, w] : d.weights()) {
        Json tuple = Json::array();
        for (const auto& key : keys) tuple.push_back(key);
        atoms.push_back({{"tfs", std::move(tuple)}, {"w", rational_to_string(w)}});
    }
    return {{"schema", kSchemaVersion},
            {"type", "joint_tf_distribution"},
            {"shape", d.shape().to_text()},
            {"experiments", d.experiment_count()},
            {"atoms", std::move(atoms)}};
}

JointTFDistribution joint_distribution_from_json(const Json& j) {
    require_schema(j);
    JointTFDistribution d(ExperimentShape::parse(j.at("shape").get<std::string>()),
                          j.at("experiments").get<int>());
    for (const auto& atom : j.at("atoms")) {
        std::vector<std::string> keys;
        for (const auto& key : atom.at("tfs")) keys.push_back(key.get<std::string>());
        d.add(keys, rational_from_string(atom.at("w").get<std::string>()));
    }
    return d;
}

Json verdict_to_json(const LPVerdict& v, const Behavior& queried) {
    Json out{{"schema", kSchemaVersion}, {"verdict", v.feasible ? "feasible" : "infeasible"}};
    if (v.witness) {
        Json witness = Json::array();
        for (const auto& [key, w] : v.witness->weights()) {
            witness.push_back({{"tf", key}, {"w", rational_to_string(w)}});
        }
        out["witness"] = std::move(witness);
    }
    if (v.certificate) {
        const auto& shape = queried.shape();
        Json coeffs = Json::array();
        for (std::size_t i = 0; i < shape.joint_input_count(); ++i) {
            for (std::size_t j = 0; j < shape.joint_output_count(); ++j) {
                const Rational& c = v.certificate->coeffs[i * shape.joint_output_count() + j];
                if (c == 0) continue;
                coeffs.push_back({{"input", components_to_json(shape.decode_input(i))},
                                  {"output", components_to_json(shape.decode_output(j))},
                                  {"c", rational_to_string(c)}});
            }
        }
        out["certificate"] = {{"coeffs", std::move(coeffs)},
                              {"threshold", rational_to_string(v.certificate->threshold)},
                              {"violation", rational_to_string(v.certificate->violation)}};
    }
    return out;
}

Json signalling_to_json(const SignallingClass& c) {
    Json pairs = Json::object();
    for (int from = 0; from < c.party_count(); ++from) {
        for (int to = 0; to < c.party_count(); ++to) {
            if (from == to) continue;
            pairs[std::to_string(from) + "->" + std::to_string(to)] = c.signals(from, to);
        }
    }
    return {{"schema", kSchemaVersion},
            {"null", c.is_null()},
            {"class", signalling_class_text(c)},
            {"pairs", std::move(pairs)}};
}

Json pigeonhole_to_json(const PigeonholeVerdict& v) {
    Json out{{"schema", kSchemaVersion},
             {"union_bound", rational_to_string(v.union_bound)},
             {"infeasible", v.infeasible},
             {"lp_checked", v.lp_checked}};
    if (v.lp_witness) {
        Json cells = Json::array();
        for (const auto& cell : *v.lp_witness) {
            Json members = Json::array();
            for (int k : cell.members) members.push_back(k);
            cells.push_back({{"signalling", std::move(members)},
                             {"w", rational_to_string(cell.weight)}});
        }
        out["lp_witness"] = std::move(cells);
    }
    return out;
}

namespace {

Json event_to_json(const Event& e) {
    return {{"t", e.t}, {"x", e.x}, {"y", e.y}, {"z", e.z}};
}

} // namespace

Json configuration_to_json(const BoostedConfiguration& config, const IntervalOptions& options) {
    Json experiments = Json::array();
    for (const auto& e : config.experiments()) {
        experiments.push_back({{"k", e.frame_index},
                               {"a_prep", event_to_json(e.a_prep)},
                               {"b_prep", event_to_json(e.b_prep)},
                               {"a_meas", event_to_json(e.a_meas)},
                               {"b_meas", event_to_json(e.b_meas)}});
    }
    Json relations = Json::array();
    const int n = config.n();
    for (int j = -n; j <= n; ++j) {
        for (int k = j + 1; k <= n; ++k) {
            const auto& ej = config.experiment(j);
            const auto& ek = config.experiment(k);
            relations.push_back(
                {{"pair", Json::array({j, k})},
                 {"a_meas", interval_class_name(classify_interval(ej.a_meas, ek.a_meas, options))},
                 {"b_meas", interval_class_name(classify_interval(ej.b_meas, ek.b_meas, options))}});
        }
    }
    Json intra = Json::array();
    for (const auto& e : config.experiments()) {
        intra.push_back({{"k", e.frame_index},
                         {"prep_pair", interval_class_name(
                                           classify_interval(e.a_prep, e.b_prep, options))}});
    }
    return {{"schema", kSchemaVersion},
            {"n", config.n()},
            {"l", config.length()},
            {"phi", config.rapidity_step()},
            {"tau", config.tau()},
            {"experiments", std::move(experiments)},
            {"pairwise_cone_relations", std::move(relations)},
            {"intra_experiment", std::move(intra)}};
}

std::string configuration_to_csv(const BoostedConfiguration& config) {
    std::ostringstream out;
    out.precision(17);
    out << "k,event,t,x,y,z\n";
    auto row = [&](int k, const char* name, const Event& e) {
        out << k << ',' << name << ',' << e.t << ',' << e.x << ',' << e.y << ',' << e.z << '\n';
    };
    for (const auto& e : config.experiments()) {
        row(e.frame_index, "a_prep", e.a_prep);
        row(e.frame_index, "b_prep", e.b_prep);
        row(e.frame_index, "a_meas", e.a_meas);
        row(e.frame_index, "b_meas", e.b_meas);
    }
    return out.str();
}

Json causality_report_to_json(const BackwardCausalityReport& report) {
    Json witnesses = Json::array();
    for (const auto& w : report.witnesses) {
        witnesses.push_back({{"f1", w.f1},
                             {"f2", w.f2},
                             {"fixed_a1_setting", w.fixed_a1_setting},
                             {"fixed_b2_setting", w.fixed_b2_setting},
                             {"b1_settings", Json::array({w.b1_setting_low, w.b1_setting_high})},
                             {"b2_outcomes", Json::array({w.b2_outcome_low, w.b2_outcome_high})},
                             {"w", rational_to_string(w.weight)}});
    }
    return {{"schema", kSchemaVersion},
            {"witnesses", std::move(witnesses)},
            {"total_probability", rational_to_string(report.total_probability)},
            {"default_context_sufficed", report.default_context_sufficed}};
}

Json escape_to_json(const EscapeVerdict& v) {
    const char* status = v.status == EscapeStatus::Achieved     ? "achieved"
                         : v.status == EscapeStatus::NotAchieved ? "not_achieved"
                                                                 : "impossible";
    Json out{{"schema", kSchemaVersion},
             {"status", status},
             {"union_bound", rational_to_string(v.union_bound)}};
    if (!v.co_signalling.empty()) {
        Json pairs = Json::array();
        for (const auto& p : v.co_signalling) {
            pairs.push_back({{"pair", Json::array({p.first, p.second})},
                             {"w", rational_to_string(p.weight)}});
        }
        out["co_signalling"] = std::move(pairs);
    }
    if (v.construction) {
        out["construction"] = joint_distribution_to_json(*v.construction);
    }
    return out;
}

} // namespace tfkit

#include "vecuq/model_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "vecuq/error.hpp"

namespace vecuq {

namespace {

using nlohmann::json;

json to_json(const Matrix& m) {
    json rows = json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
        rows.push_back(std::move(row));
    }
    return rows;
}

json to_json(const Vector& v) {
    json out = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v[i]);
    return out;
}

Matrix matrix_from(const json& j, Eigen::Index cols, const char* field) {
    if (!j.is_array()) fail(ErrorKind::Format, std::string("model field '") + field + "' must be an array");
    Matrix m(static_cast<Eigen::Index>(j.size()), cols);
    for (std::size_t r = 0; r < j.size(); ++r) {
        const auto& row = j[r];
        if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols)
            fail(ErrorKind::Format, std::string("model field '") + field + "' row " + std::to_string(r) +
                                        " has the wrong width");
        for (Eigen::Index c = 0; c < cols; ++c) m(static_cast<Eigen::Index>(r), c) = row[c].get<double>();
    }
    return m;
}

Vector vector_from(const json& j, const char* field) {
    if (!j.is_array()) fail(ErrorKind::Format, std::string("model field '") + field + "' must be an array");
    Vector v(static_cast<Eigen::Index>(j.size()));
    for (std::size_t i = 0; i < j.size(); ++i) v[static_cast<Eigen::Index>(i)] = j[i].get<double>();
    return v;
}

}  // namespace

std::string serialize_model(const RankModel& model) {
    const auto& c = model.coupling();
    json reference;
    if (const auto* e = std::get_if<ExponentialMarginal>(&model.reference_spec().family)) {
        reference["family"] = "exp";
        reference["lambda"] = e->rate;
    } else {
        const auto& b = std::get<BetaMarginal>(model.reference_spec().family);
        reference["family"] = "beta";
        reference["alpha"] = b.alpha;
        reference["beta"] = b.beta;
    }
    reference["dimension"] = model.reference_spec().dimension;
    reference["atom_budget"] = model.reference_spec().atom_budget;
    reference["atoms"] = to_json(model.reference().atoms);
    reference["weights"] = to_json(model.reference().weights);

    json doc;
    doc["format_version"] = kModelFormatVersion;
    doc["measure_names"] = model.measure_names();
    doc["scaler"] = {{"kind", to_string(model.scaler().kind)},
                     {"mins", model.scaler().mins},
                     {"maxes", model.scaler().maxes}};
    doc["gamma"] = model.anchor_config().gamma;
    doc["epsilon"] = c.epsilon;
    doc["reference"] = std::move(reference);
    doc["anchor_count"] = model.anchor_count();
    doc["source_atoms"] = to_json(c.source_atoms);
    doc["source_weights"] = to_json(c.source_weights);
    doc["log_u"] = to_json(c.log_u);
    doc["log_v"] = to_json(c.log_v);
    doc["diagnostics"] = {{"iterations", c.iterations_run},
                          {"residual", c.marginal_residual},
                          {"first_residual", c.first_residual},
                          {"converged", c.converged}};
    return doc.dump(1) + "\n";
}

RankModel deserialize_model(std::string_view json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::exception& e) {
        fail(ErrorKind::Format, std::string("model file is not valid JSON: ") + e.what());
    }
    try {
        if (!doc.contains("format_version")) fail(ErrorKind::Format, "model file has no format_version");
        const int version = doc.at("format_version").get<int>();
        if (version != kModelFormatVersion)
            fail(ErrorKind::Format, "unsupported model format_version " + std::to_string(version) + " (expected " +
                                        std::to_string(kModelFormatVersion) + ")");

        auto names = doc.at("measure_names").get<std::vector<std::string>>();
        const auto m = static_cast<Eigen::Index>(names.size());

        Scaler scaler;
        scaler.kind = scaling_from_string(doc.at("scaler").at("kind").get<std::string>());
        scaler.mins = doc.at("scaler").at("mins").get<std::vector<double>>();
        scaler.maxes = doc.at("scaler").at("maxes").get<std::vector<double>>();

        AnchorConfig anchors{doc.at("gamma").get<double>()};

        const auto& ref = doc.at("reference");
        ReferenceSpec spec;
        const auto family = ref.at("family").get<std::string>();
        if (family == "exp")
            spec.family = ExponentialMarginal{ref.at("lambda").get<double>()};
        else if (family == "beta")
            spec.family = BetaMarginal{ref.at("alpha").get<double>(), ref.at("beta").get<double>()};
        else
            fail(ErrorKind::Format, "unknown reference family '" + family + "'");
        spec.dimension = ref.at("dimension").get<std::size_t>();
        spec.atom_budget = ref.at("atom_budget").get<std::size_t>();
        ReferenceCloud cloud{matrix_from(ref.at("atoms"), m, "reference.atoms"),
                             vector_from(ref.at("weights"), "reference.weights")};

        Coupling c;
        c.epsilon = doc.at("epsilon").get<double>();
        c.source_atoms = matrix_from(doc.at("source_atoms"), m, "source_atoms");
        c.source_weights = vector_from(doc.at("source_weights"), "source_weights");
        c.target_atoms = cloud.atoms;
        c.target_weights = cloud.weights;
        c.log_u = vector_from(doc.at("log_u"), "log_u");
        c.log_v = vector_from(doc.at("log_v"), "log_v");
        const auto& diag = doc.at("diagnostics");
        c.iterations_run = diag.at("iterations").get<std::size_t>();
        c.marginal_residual = diag.at("residual").get<double>();
        c.first_residual = diag.value("first_residual", c.marginal_residual);
        c.converged = diag.at("converged").get<bool>();
        if (c.log_u.size() != c.source_atoms.rows()) fail(ErrorKind::Format, "log_u length does not match source_atoms");

        const auto anchor_count = doc.at("anchor_count").get<std::size_t>();
        return RankModel(std::move(scaler), anchors, std::move(spec), std::move(cloud), std::move(c), std::move(names),
                         anchor_count);
    } catch (const json::exception& e) {
        fail(ErrorKind::Format, std::string("model file is malformed: ") + e.what());
    } catch (const Error& e) {
        if (e.kind() == ErrorKind::Format) throw;
        fail(ErrorKind::Format, std::string("model file is inconsistent: ") + e.what());
    }
}

void save_model(const RankModel& model, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) fail(ErrorKind::Io, "cannot write model '" + path.string() + "'");
    out << serialize_model(model);
    if (!out) fail(ErrorKind::Io, "error while writing model '" + path.string() + "'");
}

RankModel load_model(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(ErrorKind::Io, "cannot open model '" + path.string() + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return deserialize_model(buf.str());
}

}  // namespace vecuq

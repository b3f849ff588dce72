#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "seriation/errors.hpp"
#include "seriation/io.hpp"

#include "json.hpp"

namespace seriation {

namespace {

// Result documents are written by hand: fixed key order and 17-significant-
// digit floats, so identical runs produce byte-identical files. nlohmann is
// used for parsing only.
std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string quote(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            case '\r': out += "\\r"; break;
            default:
                if (static_cast<unsigned char>(c) < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof(buf), "\\u%04x", c);
                    out += buf;
                } else {
                    out += c;
                }
        }
    }
    return out + "\"";
}

class JsonWriter {
public:
    void begin_object() { open('{'); }
    void end_object() { close('}'); }
    void begin_array(const std::string& key) {
        comma();
        out_ << quote(key) << ":[";
        first_ = true;
    }
    void end_array() {
        out_ << ']';
        first_ = false;
    }
    void key_object(const std::string& key) {
        comma();
        out_ << quote(key) << ":{";
        first_ = true;
    }
    void field(const std::string& key, const std::string& value) {
        comma();
        out_ << quote(key) << ':' << quote(value);
    }
    void field(const std::string& key, double value) {
        comma();
        out_ << quote(key) << ':' << fmt(value);
    }
    void field(const std::string& key, int value) {
        comma();
        out_ << quote(key) << ':' << value;
    }
    void field(const std::string& key, std::uint64_t value) {
        comma();
        out_ << quote(key) << ':' << value;
    }
    void field_bool(const std::string& key, bool value) {
        comma();
        out_ << quote(key) << ':' << (value ? "true" : "false");
    }
    void element(int value) {
        comma();
        out_ << value;
    }
    void element(double value) {
        comma();
        out_ << fmt(value);
    }
    void element(const std::string& value) {
        comma();
        out_ << quote(value);
    }
    std::string str() const { return out_.str(); }

private:
    void open(char c) {
        comma();
        out_ << c;
        first_ = true;
    }
    void close(char c) {
        out_ << c;
        first_ = false;
    }
    void comma() {
        if (!first_) out_ << ',';
        first_ = false;
    }

    std::ostringstream out_;
    bool first_ = true;
};

void write_measures(JsonWriter& w, const std::string& key, const MeasureReport& m) {
    w.key_object(key);
    w.field("vn_p1", m.vn_p1);
    w.field("vn_p2", m.vn_p2);
    w.field("moore_p1", m.moore_p1);
    w.field("moore_p2", m.moore_p2);
    w.field("me", m.me);
    w.field("homogeneity", m.homogeneity);
    w.end_object();
}

}  // namespace

ResultDocument make_result_document(const DenseMatrix& original, const SeriationResult& result,
                                    const MeasureSpec& measure, bool coordinated,
                                    const std::string& instance_name, bool include_runtime) {
    ResultDocument doc;
    doc.instance = instance_name;
    doc.n_rows = original.rows();
    doc.n_cols = original.cols();
    doc.measure = measure.name();
    doc.coordinated = coordinated;
    doc.solver = result.solver_name;
    doc.status = to_string(result.status);
    doc.gap = result.gap;
    if (include_runtime) doc.runtime_seconds = result.runtime_seconds;
    doc.row_permutation.reserve(result.row_perm.size());
    for (int v : result.row_perm.mapping()) doc.row_permutation.push_back(v + 1);
    for (int v : result.col_perm.mapping()) doc.col_permutation.push_back(v + 1);
    doc.objective = result.objective;
    doc.bound = result.bound;
    doc.reordered_measures = result.measures;
    doc.original_measures = measure_report(original);
    doc.deviations = result.deviations;
    return doc;
}

std::string result_json_string(const ResultDocument& doc) {
    JsonWriter w;
    w.begin_object();
    w.field("schema_version", doc.schema_version);
    w.field("instance", doc.instance);
    w.field("n_rows", doc.n_rows);
    w.field("n_cols", doc.n_cols);
    if (!doc.row_labels.empty()) {
        w.begin_array("row_labels");
        for (const auto& s : doc.row_labels) w.element(s);
        w.end_array();
    }
    if (!doc.col_labels.empty()) {
        w.begin_array("col_labels");
        for (const auto& s : doc.col_labels) w.element(s);
        w.end_array();
    }
    w.field("measure", doc.measure);
    w.field_bool("coordinated", doc.coordinated);
    w.field("solver", doc.solver);
    w.field("status", doc.status);
    w.field("gap", doc.gap);
    if (doc.runtime_seconds) w.field("runtime_seconds", *doc.runtime_seconds);
    w.begin_array("row_permutation");
    for (int v : doc.row_permutation) w.element(v);
    w.end_array();
    w.begin_array("col_permutation");
    for (int v : doc.col_permutation) w.element(v);
    w.end_array();
    w.field("objective", doc.objective);
    w.field("bound", doc.bound);
    write_measures(w, "reordered_measures", doc.reordered_measures);
    write_measures(w, "original_measures", doc.original_measures);
    w.key_object("deviations");
    w.field("dev_n", doc.deviations.dev_n);
    w.field("dev_mo", doc.deviations.dev_mo);
    w.field("dev_me", doc.deviations.dev_me);
    w.field("dev_hom", doc.deviations.dev_hom);
    w.end_object();
    w.end_object();
    return w.str() + "\n";
}

void write_result_json(const ResultDocument& doc, const std::string& path) {
    std::ofstream file(path, std::ios::binary);
    if (!file) throw std::runtime_error("cannot open '" + path + "' for writing");
    file << result_json_string(doc);
    if (!file) throw std::runtime_error("write failed for '" + path + "'");
}

namespace {

MeasureReport measures_from_json(const nlohmann::json& j) {
    MeasureReport m;
    m.vn_p1 = j.at("vn_p1").get<double>();
    m.vn_p2 = j.at("vn_p2").get<double>();
    m.moore_p1 = j.at("moore_p1").get<double>();
    m.moore_p2 = j.at("moore_p2").get<double>();
    m.me = j.at("me").get<double>();
    m.homogeneity = j.at("homogeneity").get<double>();
    return m;
}

}  // namespace

ResultDocument load_result_json(const std::string& path) {
    std::ifstream file(path);
    if (!file) throw ParseError("cannot open result file '" + path + "'");
    nlohmann::json j;
    try {
        file >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError("result file '" + path + "': " + e.what());
    }
    try {
        ResultDocument doc;
        doc.schema_version = j.at("schema_version").get<std::string>();
        if (doc.schema_version != "1")
            throw ParseError("result file '" + path + "': unsupported schema version " +
                             doc.schema_version);
        doc.instance = j.at("instance").get<std::string>();
        doc.n_rows = j.at("n_rows").get<int>();
        doc.n_cols = j.at("n_cols").get<int>();
        if (j.contains("row_labels"))
            doc.row_labels = j["row_labels"].get<std::vector<std::string>>();
        if (j.contains("col_labels"))
            doc.col_labels = j["col_labels"].get<std::vector<std::string>>();
        doc.measure = j.at("measure").get<std::string>();
        doc.coordinated = j.at("coordinated").get<bool>();
        doc.solver = j.at("solver").get<std::string>();
        doc.status = j.at("status").get<std::string>();
        doc.gap = j.at("gap").get<double>();
        if (j.contains("runtime_seconds")) doc.runtime_seconds = j["runtime_seconds"].get<double>();
        doc.row_permutation = j.at("row_permutation").get<std::vector<int>>();
        doc.col_permutation = j.at("col_permutation").get<std::vector<int>>();
        doc.objective = j.at("objective").get<double>();
        doc.bound = j.at("bound").get<double>();
        doc.reordered_measures = measures_from_json(j.at("reordered_measures"));
        doc.original_measures = measures_from_json(j.at("original_measures"));
        doc.deviations.dev_n = j.at("deviations").at("dev_n").get<double>();
        doc.deviations.dev_mo = j.at("deviations").at("dev_mo").get<double>();
        doc.deviations.dev_me = j.at("deviations").at("dev_me").get<double>();
        doc.deviations.dev_hom = j.at("deviations").at("dev_hom").get<double>();
        return doc;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError("result file '" + path + "': " + e.what());
    }
}

namespace {

Permutation permutation_from_1based(const std::vector<int>& file_values) {
    std::vector<int> mapping;
    mapping.reserve(file_values.size());
    for (int v : file_values) mapping.push_back(v - 1);
    try {
        return Permutation(std::move(mapping));
    } catch (const std::invalid_argument& e) {
        throw IntegrityError(std::string("result permutation: ") + e.what());
    }
}

void check_close(const char* what, double stored, double recomputed) {
    if (std::fabs(stored - recomputed) > 1e-9 * std::max(1.0, std::fabs(recomputed)))
        throw IntegrityError(std::string(what) + " in result file (" + std::to_string(stored) +
                             ") does not match recomputation (" + std::to_string(recomputed) + ")");
}

}  // namespace

void validate_result_document(const ResultDocument& doc, const DenseMatrix& original) {
    if (doc.n_rows != original.rows() || doc.n_cols != original.cols())
        throw IntegrityError("result file dimensions do not match the matrix");
    const Permutation rows = permutation_from_1based(doc.row_permutation);
    const Permutation cols = permutation_from_1based(doc.col_permutation);
    const DenseMatrix reordered = apply_permutations(original, rows, cols);
    check_close("objective", doc.objective, MeasureSpec::from_name(doc.measure).evaluate(reordered));
    const MeasureReport m = measure_report(reordered);
    check_close("vn_p1", doc.reordered_measures.vn_p1, m.vn_p1);
    check_close("vn_p2", doc.reordered_measures.vn_p2, m.vn_p2);
    check_close("moore_p1", doc.reordered_measures.moore_p1, m.moore_p1);
    check_close("moore_p2", doc.reordered_measures.moore_p2, m.moore_p2);
    check_close("me", doc.reordered_measures.me, m.me);
    check_close("homogeneity", doc.reordered_measures.homogeneity, m.homogeneity);
}

// ---- Instance sidecars --------------------------------------------------------

void write_instance_sidecar(const GeneratedInstance& inst, const std::string& path) {
    JsonWriter w;
    w.begin_object();
    w.field("schema_version", std::string("1"));
    w.field("family", family_name(inst.spec.family));
    w.field("n", inst.spec.n);
    w.field("m", inst.spec.m);
    if (inst.spec.family == Family::BinSquare || inst.spec.family == Family::BinNonsquare)
        w.field("density", inst.spec.density);
    w.field("seed", static_cast<std::uint64_t>(inst.spec.seed));
    w.key_object("generator");
    w.field("stream", std::string("xoshiro256++"));
    w.field("seeding", std::string("splitmix64"));
    w.field("uniform", std::string("(u64 >> 11) * 2^-53"));
    w.end_object();
    if (!inst.row_points.empty()) {
        w.begin_array("row_points");
        for (double p : inst.row_points) w.element(p);
        w.end_array();
    }
    if (!inst.col_points.empty()) {
        w.begin_array("col_points");
        for (double p : inst.col_points) w.element(p);
        w.end_array();
    }
    w.end_object();
    std::ofstream file(path, std::ios::binary);
    if (!file) throw std::runtime_error("cannot open '" + path + "' for writing");
    file << w.str() << "\n";
    if (!file) throw std::runtime_error("write failed for '" + path + "'");
}

GeneratedInstance load_instance_sidecar(const std::string& path) {
    std::ifstream file(path);
    if (!file) throw ParseError("cannot open sidecar '" + path + "'");
    nlohmann::json j;
    try {
        file >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError("sidecar '" + path + "': " + e.what());
    }
    GenSpec spec;
    spec.family = family_from_name(j.at("family").get<std::string>());
    spec.n = j.at("n").get<int>();
    spec.m = j.at("m").get<int>();
    if (j.contains("density")) spec.density = j["density"].get<double>();
    spec.seed = j.at("seed").get<std::uint64_t>();
    return generate(spec);
}

}  // namespace seriation

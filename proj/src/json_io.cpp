#include "iwasawa/json_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace iwasawa::io {

namespace {

void emit(std::string& out, const json& j, int indent, int depth);

void newline(std::string& out, int indent, int depth) {
    if (indent < 0) return;
    out += '\n';
    out.append(static_cast<std::size_t>(indent * depth), ' ');
}

// A [re, im] pair or other all-number array stays on one line.
bool is_flat_array(const json& j) {
    if (!j.is_array() || j.empty()) return false;
    for (const auto& e : j)
        if (!e.is_number()) return false;
    return true;
}

void emit(std::string& out, const json& j, int indent, int depth) {
    switch (j.type()) {
        case json::value_t::object: {
            if (j.empty()) {
                out += "{}";
                return;
            }
            out += '{';
            bool first = true;
            for (auto it = j.begin(); it != j.end(); ++it) {
                if (!first) out += ',';
                first = false;
                newline(out, indent, depth + 1);
                out += json(it.key()).dump();
                out += indent < 0 ? ":" : ": ";
                emit(out, it.value(), indent, depth + 1);
            }
            newline(out, indent, depth);
            out += '}';
            return;
        }
        case json::value_t::array: {
            if (j.empty()) {
                out += "[]";
                return;
            }
            if (is_flat_array(j)) {
                out += '[';
                for (std::size_t i = 0; i < j.size(); ++i) {
                    if (i > 0) out += indent < 0 ? "," : ", ";
                    emit(out, j[i], indent, depth + 1);
                }
                out += ']';
                return;
            }
            out += '[';
            for (std::size_t i = 0; i < j.size(); ++i) {
                if (i > 0) out += ',';
                newline(out, indent, depth + 1);
                emit(out, j[i], indent, depth + 1);
            }
            newline(out, indent, depth);
            out += ']';
            return;
        }
        case json::value_t::number_float:
            out += format_double(j.get<double>());
            return;
        default:
            out += j.dump();
            return;
    }
}

std::size_t get_size(const json& j, const char* key) {
    if (!j.contains(key) || !j[key].is_number_integer() || j[key].get<long long>() < 0)
        throw Error(ErrorKind::InvalidInput, std::string("matrix JSON: '") + key + "' must be a non-negative integer");
    return j[key].get<std::size_t>();
}

}  // namespace

std::string format_double(double v) {
    if (!std::isfinite(v)) {
        if (std::isnan(v)) return "null";
        return v > 0 ? "1e999" : "-1e999";
    }
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    std::string s(buf);
    if (s.find_first_of(".eE") == std::string::npos) s += ".0";
    return s;
}

std::string dump(const json& j, int indent) {
    std::string out;
    emit(out, j, indent, 0);
    out += '\n';
    return out;
}

json matrix_to_json(const ComplexMatrix& m) {
    json data = json::array();
    for (const auto& z : m.data()) data.push_back(json::array({z.real(), z.imag()}));
    return json{{"rows", m.rows()}, {"cols", m.cols()}, {"data", std::move(data)}};
}

ComplexMatrix matrix_from_json(const json& j) {
    if (!j.is_object()) throw Error(ErrorKind::InvalidInput, "matrix JSON must be an object");
    const std::size_t rows = get_size(j, "rows");
    const std::size_t cols = get_size(j, "cols");
    if (!j.contains("data") || !j["data"].is_array())
        throw Error(ErrorKind::InvalidInput, "matrix JSON: 'data' must be an array");
    const json& data = j["data"];
    if (data.size() != rows * cols) {
        std::ostringstream msg;
        msg << "matrix JSON: expected " << rows * cols << " entries for " << rows << "x" << cols << ", got "
            << data.size();
        throw Error(ErrorKind::InvalidInput, msg.str());
    }
    std::vector<cplx> entries;
    entries.reserve(data.size());
    for (std::size_t i = 0; i < data.size(); ++i) {
        const json& e = data[i];
        if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number()) {
            std::ostringstream msg;
            msg << "matrix JSON: entry " << i << " must be [re, im]";
            throw Error(ErrorKind::InvalidInput, msg.str());
        }
        const cplx z(e[0].get<double>(), e[1].get<double>());
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
            std::ostringstream msg;
            msg << "matrix JSON: entry " << i << " is not finite";
            throw Error(ErrorKind::InvalidInput, msg.str());
        }
        entries.push_back(z);
    }
    return ComplexMatrix(rows, cols, std::move(entries));
}

json frame_to_json(const SpectralFrame& frame) {
    json clusters = json::array();
    for (const auto& c : frame.clusters()) clusters.push_back(json::array({c.value, c.multiplicity}));
    return json{{"clusters", std::move(clusters)}, {"basis", matrix_to_json(frame.basis())}};
}

SpectralFrame frame_from_json(const json& j) {
    if (!j.is_object() || !j.contains("clusters") || !j["clusters"].is_array() || !j.contains("basis"))
        throw Error(ErrorKind::InvalidInput, "frame JSON needs 'clusters' and 'basis'");
    std::vector<Cluster> clusters;
    for (const auto& c : j["clusters"]) {
        if (!c.is_array() || c.size() != 2 || !c[0].is_number() || !c[1].is_number_integer() ||
            c[1].get<long long>() <= 0)
            throw Error(ErrorKind::InvalidInput, "frame JSON: each cluster must be [value, multiplicity]");
        clusters.push_back({c[0].get<double>(), c[1].get<std::size_t>()});
    }
    return SpectralFrame(std::move(clusters), matrix_from_json(j["basis"]));
}

json report_to_json(const MembershipReport& report) {
    json out = json::object();
    for (const auto& r : report.residuals)
        out[r.name] = json{{"value", r.value}, {"bound", r.bound}, {"ok", r.ok()}};
    for (const auto& r : report.diagnostics) out[r.name] = json{{"value", r.value}};
    out["passed"] = report.passed;
    return out;
}

json factors_to_json(const KanFactors& f, const MembershipReport& report) {
    return json{{"k", matrix_to_json(f.k)},
                {"a", matrix_to_json(f.a)},
                {"n", matrix_to_json(f.n)},
                {"residuals", report_to_json(report)}};
}

json parts_to_json(const TriadicParts& parts, const MembershipReport& report) {
    return json{{"k_part", matrix_to_json(parts.k_part)},
                {"a_part", matrix_to_json(parts.a_part)},
                {"n_part", matrix_to_json(parts.n_part)},
                {"residuals", report_to_json(report)}};
}

json context_to_json(const StructureContext& ctx) {
    auto optional_matrix = [](const std::optional<ComplexMatrix>& m) { return m ? matrix_to_json(*m) : json(nullptr); };
    json relations = json::array();
    for (const auto& r : ctx.basis_relations)
        relations.push_back(json{{"op", to_string(r.op)}, {"from", r.from}, {"to", r.to}, {"sign", r.sign}});
    json invariants = json::array();
    for (const auto& r : ctx.invariants)
        invariants.push_back(json{{"name", r.name}, {"value", r.value}, {"bound", r.bound}, {"ok", r.ok()}});
    return json{{"family", to_string(ctx.family)},
                {"dim", ctx.dim},
                {"J", optional_matrix(ctx.J)},
                {"Jt", optional_matrix(ctx.Jt)},
                {"V", optional_matrix(ctx.V)},
                {"adapted_basis", matrix_to_json(ctx.adapted_basis)},
                {"basis_relations", std::move(relations)},
                {"invariants", std::move(invariants)}};
}

void write_growth_csv(std::ostream& out, std::span<const GrowthRow> rows) {
    out << "n,op_norm_W,op_norm_TW,ratio_op,s2_norm_W,s2_norm_TW,ratio_s2\n";
    for (const auto& r : rows)
        out << r.n << ',' << format_double(r.op_norm_w) << ',' << format_double(r.op_norm_tw) << ','
            << format_double(r.ratio_op) << ',' << format_double(r.s2_norm_w) << ',' << format_double(r.s2_norm_tw)
            << ',' << format_double(r.ratio_s2) << '\n';
}

void write_curve_csv(std::ostream& out, std::span<const CurvePoint> curve) {
    out << "rank,err_k,err_a,err_n\n";
    for (const auto& c : curve)
        out << c.rank << ',' << format_double(c.err_k) << ',' << format_double(c.err_a) << ','
            << format_double(c.err_n) << '\n';
}

json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::InvalidInput, "cannot open '" + path + "'");
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw Error(ErrorKind::InvalidInput, "'" + path + "' is not valid JSON: " + e.what());
    }
}

ComplexMatrix read_matrix_file(const std::string& path) {
    const json j = read_json_file(path);
    try {
        return matrix_from_json(j);
    } catch (const Error& e) {
        throw Error(ErrorKind::InvalidInput, "'" + path + "': " + e.detail());
    }
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorKind::InvalidInput, "cannot write '" + path + "'");
    out << text;
    if (!out) throw Error(ErrorKind::InvalidInput, "failed writing '" + path + "'");
}

}  // namespace iwasawa::io

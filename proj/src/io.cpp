#include "catcode/io.hpp"

#include <cstdio>
#include <fstream>

#include <json.hpp>

namespace catcode {

namespace {

using nlohmann::json;

json complex_to_json(cx v) { return json::array({v.real(), v.imag()}); }

cx complex_from_json(const json& j) {
    if (!j.is_array() || j.size() != 2)
        throw argument_error("ArgumentError", "complex values serialize as [re, im]");
    return cx(j[0].get<double>(), j[1].get<double>());
}

json matrix_to_json(const cmat& m) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows; ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < m.cols; ++j) row.push_back(complex_to_json(m(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

cmat matrix_from_json(const json& j) {
    const std::size_t r = j.size();
    if (r == 0) throw argument_error("ArgumentError", "empty matrix in input");
    const std::size_t c = j[0].size();
    cmat m(r, c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t k = 0; k < c; ++k) m(i, k) = complex_from_json(j[i][k]);
    return m;
}

json vector_to_json(const std::vector<cx>& v) {
    json out = json::array();
    for (cx z : v) out.push_back(complex_to_json(z));
    return out;
}

}  // namespace

std::string code_to_json(const bosonic_code& c) {
    json g;
    g["name"] = c.group.name;
    g["dim"] = c.group.dim;
    g["order"] = c.group.order();
    json elems = json::array();
    for (const cmat& e : c.group.elements) elems.push_back(matrix_to_json(e));
    g["elements"] = std::move(elems);
    g["generators"] = c.group.generators;
    g["basis_elements"] = c.group.basis_elements;

    json doc;
    doc["group"] = std::move(g);
    const cx alpha = c.coherent_params ? c.coherent_params->first : cx(0.0);
    const cx beta = c.coherent_params ? c.coherent_params->second : cx(0.0);
    doc["alpha"] = complex_to_json(alpha);
    doc["beta"] = complex_to_json(beta);
    doc["modes"] = c.space.modes;
    doc["cutoff"] = c.space.cutoff;
    json words = json::array();
    for (const fock_state& w : c.codewords) words.push_back(vector_to_json(w.amp));
    doc["codewords"] = std::move(words);
    doc["normalization"] = c.normalization;
    doc["projector_norm"] = c.projector_norm;
    return doc.dump(2);
}

void save_code(const bosonic_code& c, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw argument_error("ArgumentError", "cannot open '" + path + "' for writing");
    out << code_to_json(c) << "\n";
    if (!out) throw argument_error("ArgumentError", "write to '" + path + "' failed");
}

bosonic_code load_code(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw argument_error("ArgumentError", "cannot open '" + path + "'");
    json doc;
    try {
        in >> doc;
    } catch (const json::exception& ex) {
        throw argument_error("ArgumentError", std::string("malformed JSON: ") + ex.what());
    }

    try {
        bosonic_code c;
        const json& g = doc.at("group");
        const std::string name = g.at("name").get<std::string>();
        if (!name.empty()) {
            c.group = builtin_group(name);
        } else {
            c.group.name = name;
            c.group.dim = g.at("dim").get<std::size_t>();
            for (const json& e : g.at("elements")) c.group.elements.push_back(matrix_from_json(e));
            c.group.generators = g.at("generators").get<std::vector<std::size_t>>();
            c.group.basis_elements = g.at("basis_elements").get<std::vector<std::size_t>>();
        }

        c.space = fock_space{doc.at("modes").get<std::size_t>(), doc.at("cutoff").get<std::size_t>()};
        const cx alpha = complex_from_json(doc.at("alpha"));
        const cx beta = complex_from_json(doc.at("beta"));
        c.coherent_params = std::make_pair(alpha, beta);
        c.initial = coherent(c.space, {alpha, beta});
        for (const json& w : doc.at("codewords")) {
            fock_state st{c.space, {}};
            for (const json& z : w) st.amp.push_back(complex_from_json(z));
            if (st.amp.size() != c.space.dim())
                throw argument_error("ArgumentError", "codeword length mismatches the cutoff");
            c.codewords.push_back(std::move(st));
        }
        if (c.codewords.size() != c.group.dim)
            throw argument_error("ArgumentError", "codeword count mismatches the group dimension");
        c.normalization = doc.at("normalization").get<double>();
        c.projector_norm = doc.at("projector_norm").get<double>();
        return c;
    } catch (const json::exception& ex) {
        throw argument_error("ArgumentError", std::string("missing or mistyped field: ") + ex.what());
    }
}

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.10g", v);
    return buf;
}

std::string format_sci(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12e", v);
    return buf;
}

std::string sweep_csv(const std::vector<sweep_row>& rows) {
    std::string out =
        "alpha,theta,gamma,group,variant,infidelity_opt,infidelity_transpose,gap,"
        "support_dim,cutoff,pmax\n";
    char buf[64];
    for (const sweep_row& r : rows) {
        std::snprintf(buf, sizeof(buf), "%.4g", r.point.theta);
        const std::string variant = r.point.group + "_t" + buf;
        out += format_double(r.point.alpha);
        out += ',';
        out += format_double(r.point.theta);
        out += ',';
        out += format_double(r.point.gamma);
        out += ',';
        out += r.point.group;
        out += ',';
        out += variant;
        out += ',';
        out += format_sci(r.infidelity_opt);
        out += ',';
        out += format_sci(r.infidelity_transpose);
        out += ',';
        out += format_sci(r.gap);
        out += ',';
        out += std::to_string(r.support_dim);
        out += ',';
        out += std::to_string(r.cutoff);
        out += ',';
        out += std::to_string(r.point.max_weight);
        out += '\n';
    }
    return out;
}

std::string error_json(const std::string& id, const std::string& message) {
    json j;
    j["error"] = id;
    j["message"] = message;
    return j.dump();
}

}  // namespace catcode

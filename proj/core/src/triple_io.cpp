#include "riccati/triple_io.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>

namespace riccati {

namespace {

using nlohmann::json;

Matrix parse_matrix_field(const json& doc, const std::string& name,
                          bool required, Index rows, Index cols) {
    if (!doc.contains(name)) {
        if (!required) return Matrix::Zero(rows, cols);
        throw ParseError("missing field '" + name + "'");
    }
    const json& arr = doc.at(name);
    if (!arr.is_array())
        throw ParseError("field '" + name + "' must be an array of rows");
    Matrix m(static_cast<Index>(arr.size()), 0);
    for (std::size_t i = 0; i < arr.size(); ++i) {
        const json& row = arr[i];
        if (!row.is_array())
            throw ParseError("field '" + name + "', row " + std::to_string(i) +
                             ": expected an array");
        if (i == 0) m.resize(m.rows(), static_cast<Index>(row.size()));
        if (static_cast<Index>(row.size()) != m.cols())
            throw ParseError("field '" + name + "', row " + std::to_string(i) +
                             ": ragged row length");
        for (std::size_t j = 0; j < row.size(); ++j) {
            if (!row[j].is_number())
                throw ParseError("field '" + name + "', entry (" +
                                 std::to_string(i) + "," + std::to_string(j) +
                                 "): expected a number");
            m(static_cast<Index>(i), static_cast<Index>(j)) =
                row[j].get<double>();
        }
    }
    return m;
}

json parse_document(std::istream& in, const std::string& origin) {
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw ParseError(origin + ": " + e.what());
    }
}

}  // namespace

TripleDocument parse_triple(std::istream& in, const std::string& origin,
                            const Tolerance& tol) {
    const json doc = parse_document(in, origin);
    if (!doc.is_object()) throw ParseError(origin + ": expected a JSON object");

    const Matrix a = parse_matrix_field(doc, "A", true, 0, 0);
    const Matrix b = parse_matrix_field(doc, "B", true, 0, 0);
    const Matrix q = parse_matrix_field(doc, "Q", true, 0, 0);
    const Matrix r = parse_matrix_field(doc, "R", true, 0, 0);
    const Matrix s = parse_matrix_field(doc, "S", false, a.rows(), b.cols());

    if (doc.contains("n") &&
        doc.at("n").get<Index>() != a.rows())
        throw ParseError(origin + ": field 'n' disagrees with the shape of A");
    if (doc.contains("m") &&
        doc.at("m").get<Index>() != b.cols())
        throw ParseError(origin + ": field 'm' disagrees with the shape of B");

    TripleDocument out{PopovTriple{}, std::nullopt};
    if (doc.contains("tol")) {
        const json& t = doc.at("tol");
        Tolerance over = tol;
        if (t.contains("rel")) over.rel = t.at("rel").get<double>();
        if (t.contains("abs_residual"))
            over.abs_residual = t.at("abs_residual").get<double>();
        out.tol = over;
    }
    try {
        out.triple = make_triple(a, b, q, r, s, out.tol.value_or(tol));
    } catch (const std::invalid_argument& e) {
        throw ParseError(origin + ": " + e.what());
    }
    return out;
}

TripleDocument load_triple(const std::string& path, const Tolerance& tol) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open '" + path + "'");
    return parse_triple(in, path, tol);
}

Matrix load_matrix(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open '" + path + "'");
    const json doc = parse_document(in, path);
    json wrapped;
    if (doc.is_array())
        wrapped["X"] = doc;
    else if (doc.is_object() && doc.contains("X"))
        wrapped["X"] = doc.at("X");
    else
        throw ParseError(path + ": expected { \"X\": [[...]] } or a bare array");
    try {
        return parse_matrix_field(wrapped, "X", true, 0, 0);
    } catch (const ParseError& e) {
        throw ParseError(path + ": " + e.what());
    }
}

std::string matrix_to_json(const Matrix& m) {
    json rows = json::array();
    for (Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
        rows.push_back(std::move(row));
    }
    return rows.dump();
}

void save_triple(const PopovTriple& sigma, const std::string& path) {
    json doc;
    doc["n"] = sigma.n();
    doc["m"] = sigma.m();
    doc["A"] = json::parse(matrix_to_json(sigma.A));
    doc["B"] = json::parse(matrix_to_json(sigma.B));
    doc["Q"] = json::parse(matrix_to_json(sigma.Q));
    doc["R"] = json::parse(matrix_to_json(sigma.R));
    doc["S"] = json::parse(matrix_to_json(sigma.S));
    std::ofstream out(path);
    if (!out) throw IoError("cannot write '" + path + "'");
    out << doc.dump(2) << '\n';
}

}  // namespace riccati

#include "varimin/field_io.hpp"

#include "varimin/error.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace varimin {

namespace {

using nlohmann::json;

void write_vec(std::ostream& out, const Vec& v) {
    out << '[';
    for (Eigen::Index i = 0; i < v.size(); ++i) out << (i ? "," : "") << format_number(v(i));
    out << ']';
}

void write_tensor(std::ostream& out, const Tensor3& t) {
    const int S = t.dim();
    out << '[';
    bool first = true;
    for (int i = 0; i < S; ++i)
        for (int j = 0; j < S; ++j)
            for (int k = 0; k < S; ++k) {
                out << (first ? "" : ",") << format_number(t(i, j, k));
                first = false;
            }
    out << ']';
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

Vec json_vec(const json& j, const std::string& what) {
    if (!j.is_array()) throw InputError(what + " must be an array");
    Vec v(static_cast<Eigen::Index>(j.size()));
    for (std::size_t i = 0; i < j.size(); ++i) v(static_cast<Eigen::Index>(i)) = j[i].get<double>();
    return v;
}

}  // namespace

std::string format_number(double x) {
    if (!std::isfinite(x)) return "null";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

void write_curvature_jsonl(std::ostream& out, const DiscreteVarifold& V, const CurvatureField& field) {
    if (field.size() != V.size()) throw PreconditionError("curvature field size does not match varifold");
    for (int i = 0; i < V.size(); ++i) {
        out << "{\"i\":" << i << ",\"x\":";
        write_vec(out, V.atom(i).x);
        out << ",\"w\":" << format_number(V.atom(i).w) << ",\"H\":";
        write_vec(out, field.H[i]);
        out << ",\"H_N\":";
        write_vec(out, field.H_N[i]);
        out << ",\"residual\":" << format_number(field.residual[i]) << ",\"flags\":" << int(field.flags[i]);
        if (!field.normal_part.empty()) out << ",\"normal_part\":" << format_number(field.normal_part[i]);
        out << "}\n";
    }
}

void write_tensor_jsonl(std::ostream& out, const DiscreteVarifold& V, const CurvatureTensorField& field) {
    if (field.size() != V.size()) throw PreconditionError("tensor field size does not match varifold");
    for (int i = 0; i < V.size(); ++i) {
        out << "{\"i\":" << i << ",\"B\":";
        write_tensor(out, field.B[i]);
        out << ",\"A\":";
        write_tensor(out, field.A[i]);
        out << ",\"residual\":" << format_number(field.residual[i]) << ",\"flags\":" << int(field.flags[i])
            << ",\"condition\":" << format_number(field.condition[i]) << "}\n";
    }
}

CurvatureField read_curvature_jsonl(const std::filesystem::path& path, int atoms, int S) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open curvature field file: " + path.string());
    CurvatureField f = make_curvature_field(atoms, S);
    std::string line;
    int i = 0, lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        if (i >= atoms) throw InputError(path.string() + ": more field lines than atoms (" + std::to_string(atoms) + ")");
        try {
            json j = json::parse(line);
            f.H[i] = json_vec(j.at("H"), "H");
            f.H_N[i] = j.contains("H_N") ? json_vec(j["H_N"], "H_N") : f.H[i];
            if (f.H[i].size() != S || f.H_N[i].size() != S) throw InputError("H has wrong dimension");
            if (j.contains("residual") && j["residual"].is_number()) f.residual[i] = j["residual"].get<double>();
            if (j.contains("flags")) f.flags[i] = static_cast<std::uint8_t>(j["flags"].get<int>());
        } catch (const json::exception& e) {
            throw InputError(path.string() + ":" + std::to_string(lineno) + ": " + e.what());
        } catch (const InputError& e) {
            throw InputError(path.string() + ":" + std::to_string(lineno) + ": " + e.what());
        }
        ++i;
    }
    if (i != atoms)
        throw InputError(path.string() + ": " + std::to_string(i) + " field lines for " + std::to_string(atoms) + " atoms");
    return f;
}

DiscreteVarifold read_varifold_jsonl(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open varifold file: " + path.string());
    std::vector<VarifoldAtom> atoms;
    std::string line;
    int lineno = 0, m = -1, S = -1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        try {
            json j = json::parse(line);
            Vec x = json_vec(j.at("x"), "x");
            const json& P = j.at("P");
            const int n = static_cast<int>(x.size());
            if (!P.is_array() || static_cast<int>(P.size()) != n) throw InputError("P must be an S x S array");
            Mat Pm(n, n);
            for (int r = 0; r < n; ++r) Pm.row(r) = json_vec(P[r], "P row").transpose();
            VarifoldAtom a{x, PlaneProjector(Pm), j.at("w").get<double>()};
            if (S < 0) {
                S = n;
                m = a.P.rank();
            }
            atoms.push_back(std::move(a));
        } catch (const json::exception& e) {
            throw InputError(path.string() + ":" + std::to_string(lineno) + ": " + e.what());
        } catch (const Error& e) {
            throw InputError(path.string() + ":" + std::to_string(lineno) + ": " + e.what());
        }
    }
    if (atoms.empty()) throw InputError(path.string() + ": no atoms");
    return DiscreteVarifold(m, S, std::move(atoms));
}

void write_varifold_jsonl(std::ostream& out, const DiscreteVarifold& V) {
    for (const auto& a : V.atoms()) {
        out << "{\"x\":";
        write_vec(out, a.x);
        out << ",\"P\":[";
        const Mat& P = a.P.matrix();
        for (Eigen::Index r = 0; r < P.rows(); ++r) {
            out << (r ? "," : "");
            write_vec(out, P.row(r).transpose());
        }
        out << "],\"w\":" << format_number(a.w) << "}\n";
    }
}

void write_bounds_csv(std::ostream& out, const std::vector<BoundReport>& reports) {
    out << "lemma,lhs,rhs,constant,margin,status,pass,note\n";
    for (const auto& r : reports)
        out << csv_field(r.lemma) << ',' << format_number(r.lhs) << ',' << format_number(r.rhs) << ','
            << format_number(r.constant) << ',' << format_number(r.margin) << ',' << to_string(r.status) << ','
            << (r.pass() ? 1 : 0) << ',' << csv_field(r.note) << '\n';
}

std::string format_bounds_table(const std::vector<BoundReport>& reports) {
    std::ostringstream os;
    os << std::left << std::setw(8) << "lemma" << std::right << std::setw(14) << "lhs" << std::setw(14) << "rhs"
       << std::setw(14) << "constant" << std::setw(12) << "margin" << "  " << std::left << std::setw(20) << "status"
       << "note\n";
    for (const auto& r : reports) {
        os << std::left << std::setw(8) << r.lemma << std::right << std::setprecision(6) << std::setw(14) << r.lhs
           << std::setw(14) << r.rhs << std::setw(14) << r.constant << std::setw(12) << r.margin << "  " << std::left
           << std::setw(20) << to_string(r.status) << r.note << '\n';
    }
    return os.str();
}

}  // namespace varimin

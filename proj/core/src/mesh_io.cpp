#include "varimin/mesh_io.hpp"

#include "varimin/error.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>
#include <string>
#include <vector>

namespace varimin {

namespace {

// Whitespace tokenizer that skips '#' comments.
class TokenStream {
public:
    explicit TokenStream(std::istream& in) : in_(in) {}

    bool next(std::string& tok) {
        while (true) {
            if (line_ >> tok) {
                if (tok[0] == '#') {
                    line_.clear();
                    line_.str("");
                    continue;
                }
                return true;
            }
            std::string raw;
            if (!std::getline(in_, raw)) return false;
            line_.clear();
            line_.str(raw);
        }
    }

    template <class T>
    T read(const char* what) {
        std::string tok;
        if (!next(tok)) throw InputError(std::string("OFF: unexpected end of file reading ") + what);
        std::istringstream ss(tok);
        T v;
        if (!(ss >> v)) throw InputError(std::string("OFF: malformed ") + what + " '" + tok + "'");
        return v;
    }

private:
    std::istream& in_;
    std::istringstream line_;
};

SimplicialMesh assemble(const std::vector<std::vector<double>>& verts, std::vector<std::vector<int>> polys, int dim) {
    if (verts.empty()) throw InputError("mesh has no vertices");
    if (polys.empty()) throw InputError("mesh has no faces or segments");
    std::vector<std::vector<int>> simplices;
    int arity = -1;
    for (auto& p : polys) {
        if (p.size() < 2) throw InputError("face with fewer than two vertices");
        if (p.size() <= 3) {
            simplices.push_back(p);
        } else {
            for (std::size_t i = 1; i + 1 < p.size(); ++i) simplices.push_back({p[0], p[i], p[i + 1]});
        }
    }
    for (auto& s : simplices) {
        int a = static_cast<int>(s.size());
        if (arity < 0) arity = a;
        if (a != arity) throw InputError("mesh mixes segments and triangles");
    }
    Mat V(dim, static_cast<int>(verts.size()));
    for (std::size_t i = 0; i < verts.size(); ++i)
        for (int d = 0; d < dim; ++d) V(d, static_cast<int>(i)) = verts[i][d];
    Eigen::MatrixXi F(arity, static_cast<int>(simplices.size()));
    for (std::size_t k = 0; k < simplices.size(); ++k)
        for (int c = 0; c < arity; ++c) F(c, static_cast<int>(k)) = simplices[k][c];
    return SimplicialMesh(std::move(V), std::move(F));
}

void write_number(std::ostream& out, double v) {
    out << std::setprecision(17) << v;
}

}  // namespace

SimplicialMesh read_off(std::istream& in) {
    TokenStream ts(in);
    std::string header;
    if (!ts.next(header)) throw InputError("OFF: empty input");
    int dim = 3;
    if (header == "nOFF") {
        dim = ts.read<int>("dimension");
        if (dim < 2) throw InputError("OFF: dimension must be at least 2");
    } else if (header != "OFF") {
        throw InputError("OFF: missing OFF header (got '" + header + "')");
    }
    int nv = ts.read<int>("vertex count");
    int nf = ts.read<int>("face count");
    ts.read<long>("edge count");
    if (nv < 0 || nf < 0) throw InputError("OFF: negative counts");
    std::vector<std::vector<double>> verts(static_cast<std::size_t>(nv), std::vector<double>(dim));
    for (int i = 0; i < nv; ++i)
        for (int d = 0; d < dim; ++d) verts[i][d] = ts.read<double>("vertex coordinate");
    std::vector<std::vector<int>> polys(static_cast<std::size_t>(nf));
    for (int f = 0; f < nf; ++f) {
        int k = ts.read<int>("face size");
        if (k < 2) throw InputError("OFF: face " + std::to_string(f) + " has fewer than two vertices");
        polys[f].resize(k);
        for (int c = 0; c < k; ++c) polys[f][c] = ts.read<int>("face index");
    }
    return assemble(verts, std::move(polys), dim);
}

SimplicialMesh read_obj(std::istream& in) {
    std::vector<std::vector<double>> verts;
    std::vector<std::vector<int>> polys;
    std::string raw;
    int lineno = 0;
    auto parse_index = [&](const std::string& tok) {
        std::string head = tok.substr(0, tok.find('/'));
        int idx = 0;
        try {
            idx = std::stoi(head);
        } catch (...) {
            throw InputError("OBJ line " + std::to_string(lineno) + ": bad index '" + tok + "'");
        }
        if (idx < 0) idx = static_cast<int>(verts.size()) + idx + 1;
        return idx - 1;
    };
    while (std::getline(in, raw)) {
        ++lineno;
        std::istringstream ls(raw);
        std::string kind;
        if (!(ls >> kind) || kind[0] == '#') continue;
        if (kind == "v") {
            std::vector<double> p;
            double x;
            while (ls >> x) p.push_back(x);
            if (p.size() < 3) throw InputError("OBJ line " + std::to_string(lineno) + ": vertex needs 3 coordinates");
            p.resize(3);
            verts.push_back(p);
        } else if (kind == "f") {
            std::vector<int> face;
            std::string tok;
            while (ls >> tok) face.push_back(parse_index(tok));
            polys.push_back(face);
        } else if (kind == "l") {
            std::vector<int> line;
            std::string tok;
            while (ls >> tok) line.push_back(parse_index(tok));
            for (std::size_t i = 0; i + 1 < line.size(); ++i) polys.push_back({line[i], line[i + 1]});
        }
    }
    return assemble(verts, std::move(polys), 3);
}

SimplicialMesh read_mesh(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open mesh file: " + path.string());
    std::string ext = path.extension().string();
    for (auto& c : ext) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    try {
        if (ext == ".obj") return read_obj(in);
        return read_off(in);
    } catch (const InputError& e) {
        throw InputError(path.string() + ": " + e.what());
    }
}

void write_off(std::ostream& out, const SimplicialMesh& mesh) {
    if (mesh.ambient_dim() == 3) {
        out << "OFF\n";
    } else {
        out << "nOFF\n" << mesh.ambient_dim() << "\n";
    }
    out << mesh.num_vertices() << ' ' << mesh.num_simplices() << " 0\n";
    for (int i = 0; i < mesh.num_vertices(); ++i) {
        for (int d = 0; d < mesh.ambient_dim(); ++d) {
            if (d) out << ' ';
            write_number(out, mesh.vertices()(d, i));
        }
        out << '\n';
    }
    for (int k = 0; k < mesh.num_simplices(); ++k) {
        out << mesh.simplex_dim() + 1;
        for (int c = 0; c <= mesh.simplex_dim(); ++c) out << ' ' << mesh.index(k, c);
        out << '\n';
    }
}

void write_obj(std::ostream& out, const SimplicialMesh& mesh) {
    if (mesh.ambient_dim() != 3) throw PreconditionError("OBJ output needs vertices in R^3");
    for (int i = 0; i < mesh.num_vertices(); ++i) {
        out << 'v';
        for (int d = 0; d < 3; ++d) {
            out << ' ';
            write_number(out, mesh.vertices()(d, i));
        }
        out << '\n';
    }
    const char tag = mesh.simplex_dim() == 1 ? 'l' : 'f';
    for (int k = 0; k < mesh.num_simplices(); ++k) {
        out << tag;
        for (int c = 0; c <= mesh.simplex_dim(); ++c) out << ' ' << mesh.index(k, c) + 1;
        out << '\n';
    }
}

void write_mesh(const std::filesystem::path& path, const SimplicialMesh& mesh) {
    std::ofstream out(path);
    if (!out) throw InputError("cannot write mesh file: " + path.string());
    if (path.extension() == ".obj")
        write_obj(out, mesh);
    else
        write_off(out, mesh);
}

}  // namespace varimin

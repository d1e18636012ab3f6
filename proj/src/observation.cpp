#include "mfc/observation.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace mfc {

namespace {

class UnionFind {
public:
    explicit UnionFind(int n) : parent_(n), rank_(n, 0) {
        std::iota(parent_.begin(), parent_.end(), 0);
    }
    int find(int x) {
        while (parent_[x] != x) {
            parent_[x] = parent_[parent_[x]];
            x = parent_[x];
        }
        return x;
    }
    void unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) return;
        if (rank_[a] < rank_[b]) std::swap(a, b);
        parent_[b] = a;
        if (rank_[a] == rank_[b]) ++rank_[a];
    }

private:
    std::vector<int> parent_;
    std::vector<int> rank_;
};

std::string mask_key(const Matrix& mask) {
    std::string key;
    key.reserve(static_cast<size_t>(mask.size()));
    for (Eigen::Index i = 0; i < mask.rows(); ++i)
        for (Eigen::Index j = 0; j < mask.cols(); ++j)
            key.push_back(mask(i, j) != 0.0 ? '1' : '0');
    return key;
}

std::vector<std::vector<int>> all_permutations(int d) {
    std::vector<int> p(d);
    std::iota(p.begin(), p.end(), 0);
    std::vector<std::vector<int>> out;
    do {
        out.push_back(p);
    } while (std::next_permutation(p.begin(), p.end()));
    return out;
}

}  // namespace

const char* to_string(ConnectivityClass c) {
    switch (c) {
        case ConnectivityClass::Connected: return "connected";
        case ConnectivityClass::Disconnected: return "disconnected";
        case ConnectivityClass::DisconnectedCompleteBipartite:
            return "disconnected_complete_bipartite";
    }
    return "unknown";
}

void IncompleteMatrix::validate(bool allow_zero_observed) const {
    if (d <= 0) throw std::invalid_argument("matrix: dimension must be positive");
    if (values.rows() != d || values.cols() != d || mask.rows() != d ||
        mask.cols() != d) {
        throw std::invalid_argument("matrix: shape mismatch");
    }
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) {
            const double p = mask(i, j);
            if (p != 0.0 && p != 1.0) {
                throw std::invalid_argument("matrix: mask must be binary");
            }
            if (p == 1.0) {
                if (!std::isfinite(values(i, j))) {
                    throw std::invalid_argument("matrix: observed entry not finite");
                }
                if (!allow_zero_observed && values(i, j) == 0.0) {
                    throw std::invalid_argument(
                        "matrix: observed entry is zero (use allow-zero to permit)");
                }
            }
        }
    }
}

ObservationGraph build_observation_graph(const IncompleteMatrix& m) {
    ObservationGraph g;
    std::vector<bool> row_seen(static_cast<size_t>(m.d), false);
    std::vector<bool> col_seen(static_cast<size_t>(m.d), false);
    for (int i = 0; i < m.d; ++i) {
        for (int j = 0; j < m.d; ++j) {
            if (m.mask(i, j) != 0.0) {
                g.edges.emplace_back(i, j);
                row_seen[static_cast<size_t>(i)] = true;
                col_seen[static_cast<size_t>(j)] = true;
            }
        }
    }
    for (int i = 0; i < m.d; ++i) {
        if (row_seen[static_cast<size_t>(i)]) g.row_vertices.push_back(i);
        if (col_seen[static_cast<size_t>(i)]) g.col_vertices.push_back(i);
    }
    return g;
}

ComponentDecomposition connected_components(const ObservationGraph& g) {
    // Vertex ids: row i -> i, col j -> d_max + j. Use a generous offset.
    int max_idx = 0;
    for (const auto& [r, c] : g.edges) max_idx = std::max({max_idx, r, c});
    const int offset = max_idx + 1;
    UnionFind uf(2 * offset);
    for (const auto& [r, c] : g.edges) uf.unite(r, offset + c);

    std::vector<int> roots;
    std::vector<Component> comps;
    auto comp_index = [&](int root) {
        for (size_t k = 0; k < roots.size(); ++k) {
            if (roots[k] == root) return static_cast<int>(k);
        }
        roots.push_back(root);
        comps.emplace_back();
        return static_cast<int>(roots.size() - 1);
    };
    for (int r : g.row_vertices) {
        comps[static_cast<size_t>(comp_index(uf.find(r)))].rows.push_back(r);
    }
    for (int c : g.col_vertices) {
        comps[static_cast<size_t>(comp_index(uf.find(offset + c)))].cols.push_back(c);
    }
    for (const auto& e : g.edges) {
        comps[static_cast<size_t>(comp_index(uf.find(e.first)))].edges.push_back(e);
    }
    std::sort(comps.begin(), comps.end(), [](const Component& a, const Component& b) {
        const int ra = a.rows.empty() ? 1 << 20 : a.rows.front();
        const int rb = b.rows.empty() ? 1 << 20 : b.rows.front();
        return ra < rb;
    });
    return ComponentDecomposition{std::move(comps)};
}

ConnectivityClass classify_connectivity(const IncompleteMatrix& m) {
    const ObservationGraph g = build_observation_graph(m);
    if (g.edges.empty()) {
        throw std::invalid_argument("classify_connectivity: no observations");
    }
    const ComponentDecomposition dec = connected_components(g);
    if (dec.components.size() == 1) return ConnectivityClass::Connected;
    const bool all_complete =
        std::all_of(dec.components.begin(), dec.components.end(),
                    [](const Component& c) { return c.complete_bipartite(); });
    return all_complete ? ConnectivityClass::DisconnectedCompleteBipartite
                        : ConnectivityClass::Disconnected;
}

bool entry_graph_connected(const IncompleteMatrix& m) {
    std::vector<std::pair<int, int>> entries;
    for (int i = 0; i < m.d; ++i)
        for (int j = 0; j < m.d; ++j)
            if (m.mask(i, j) != 0.0) entries.emplace_back(i, j);
    if (entries.empty()) {
        throw std::invalid_argument("entry_graph_connected: no observations");
    }
    UnionFind uf(static_cast<int>(entries.size()));
    for (size_t a = 0; a < entries.size(); ++a) {
        for (size_t b = a + 1; b < entries.size(); ++b) {
            if (entries[a].first == entries[b].first ||
                entries[a].second == entries[b].second) {
                uf.unite(static_cast<int>(a), static_cast<int>(b));
            }
        }
    }
    const int root = uf.find(0);
    for (size_t a = 1; a < entries.size(); ++a) {
        if (uf.find(static_cast<int>(a)) != root) return false;
    }
    return true;
}

std::vector<Matrix> pattern_orbit(const Matrix& mask) {
    const int d = static_cast<int>(mask.rows());
    if (mask.cols() != d) throw std::invalid_argument("pattern_orbit: mask not square");
    if (d > 4) throw std::invalid_argument("pattern_orbit: d must be <= 4");
    const auto perms = all_permutations(d);
    std::vector<std::string> seen;
    std::vector<Matrix> orbit;
    for (int t = 0; t < 2; ++t) {
        const Matrix base = (t == 0) ? mask : Matrix(mask.transpose());
        for (const auto& pr : perms) {
            for (const auto& pc : perms) {
                Matrix img(d, d);
                for (int i = 0; i < d; ++i)
                    for (int j = 0; j < d; ++j)
                        img(i, j) = base(pr[static_cast<size_t>(i)],
                                         pc[static_cast<size_t>(j)]);
                std::string key = mask_key(img);
                if (std::find(seen.begin(), seen.end(), key) == seen.end()) {
                    seen.push_back(std::move(key));
                    orbit.push_back(std::move(img));
                }
            }
        }
    }
    std::sort(orbit.begin(), orbit.end(), [](const Matrix& a, const Matrix& b) {
        return mask_key(a) < mask_key(b);
    });
    return orbit;
}

Matrix canonical_pattern(const Matrix& mask) {
    return pattern_orbit(mask).front();
}

std::vector<Matrix> enumerate_pattern_classes(int d, int n) {
    if (d < 1 || d > 4) {
        throw std::invalid_argument(
            "enumerate_pattern_classes: d must be in [1, 4]; larger boards need a "
            "non-brute-force canonicalizer");
    }
    if (n < 1 || n > d * d) {
        throw std::invalid_argument("enumerate_pattern_classes: need 1 <= n <= d*d");
    }
    const int cells = d * d;
    std::vector<int> choice(static_cast<size_t>(n));
    std::vector<std::string> seen;
    std::vector<Matrix> reps;

    // Iterate all n-subsets of the d*d cells.
    std::iota(choice.begin(), choice.end(), 0);
    while (true) {
        Matrix mask = Matrix::Zero(d, d);
        for (int c : choice) mask(c / d, c % d) = 1.0;
        Matrix canon = canonical_pattern(mask);
        std::string key = mask_key(canon);
        if (std::find(seen.begin(), seen.end(), key) == seen.end()) {
            seen.push_back(std::move(key));
            reps.push_back(std::move(canon));
        }
        // Next combination.
        int i = n - 1;
        while (i >= 0 && choice[static_cast<size_t>(i)] == cells - n + i) --i;
        if (i < 0) break;
        ++choice[static_cast<size_t>(i)];
        for (int k = i + 1; k < n; ++k)
            choice[static_cast<size_t>(k)] = choice[static_cast<size_t>(k - 1)] + 1;
    }
    std::sort(reps.begin(), reps.end(), [](const Matrix& a, const Matrix& b) {
        return mask_key(a) < mask_key(b);
    });
    return reps;
}

IncompleteMatrix parse_matrix_text(const std::string& text, bool allow_zero_observed) {
    std::vector<std::vector<std::pair<bool, double>>> rows;
    std::istringstream lines(text);
    std::string line;
    while (std::getline(lines, line)) {
        const size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        for (char& ch : line) {
            if (ch == ',') ch = ' ';
        }
        std::istringstream tokens(line);
        std::string tok;
        std::vector<std::pair<bool, double>> row;
        while (tokens >> tok) {
            if (tok == "*") {
                row.emplace_back(false, 0.0);
            } else {
                size_t used = 0;
                double v = 0.0;
                try {
                    v = std::stod(tok, &used);
                } catch (const std::exception&) {
                    throw std::invalid_argument("matrix parse: bad token '" + tok + "'");
                }
                if (used != tok.size()) {
                    throw std::invalid_argument("matrix parse: bad token '" + tok + "'");
                }
                row.emplace_back(true, v);
            }
        }
        if (!row.empty()) rows.push_back(std::move(row));
    }
    if (rows.empty()) throw std::invalid_argument("matrix parse: no rows");
    const int d = static_cast<int>(rows.size());
    IncompleteMatrix m;
    m.d = d;
    m.values = Matrix::Zero(d, d);
    m.mask = Matrix::Zero(d, d);
    for (int i = 0; i < d; ++i) {
        if (static_cast<int>(rows[static_cast<size_t>(i)].size()) != d) {
            throw std::invalid_argument("matrix parse: matrix must be square");
        }
        for (int j = 0; j < d; ++j) {
            const auto& [obs, v] = rows[static_cast<size_t>(i)][static_cast<size_t>(j)];
            if (obs) {
                m.mask(i, j) = 1.0;
                m.values(i, j) = v;
            }
        }
    }
    m.validate(allow_zero_observed);
    return m;
}

IncompleteMatrix parse_matrix_json(const std::string& text, bool allow_zero_observed) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const std::exception& e) {
        throw std::invalid_argument(std::string("matrix parse: bad json: ") + e.what());
    }
    if (!j.contains("d") || !j.contains("entries")) {
        throw std::invalid_argument("matrix parse: json needs 'd' and 'entries'");
    }
    const int d = j.at("d").get<int>();
    IncompleteMatrix m;
    m.d = d;
    m.values = Matrix::Zero(d, d);
    m.mask = Matrix::Zero(d, d);
    for (const auto& e : j.at("entries")) {
        const int r = e.at(0).get<int>();
        const int c = e.at(1).get<int>();
        if (r < 0 || r >= d || c < 0 || c >= d) {
            throw std::invalid_argument("matrix parse: entry index out of range");
        }
        m.mask(r, c) = 1.0;
        m.values(r, c) = e.at(2).get<double>();
    }
    m.validate(allow_zero_observed);
    return m;
}

IncompleteMatrix load_matrix_file(const std::string& path, bool allow_zero_observed) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open file: " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    const std::string text = buf.str();
    const size_t first = text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && text[first] == '{') {
        return parse_matrix_json(text, allow_zero_observed);
    }
    return parse_matrix_text(text, allow_zero_observed);
}

std::string format_matrix_text(const IncompleteMatrix& m) {
    std::ostringstream out;
    out.precision(17);
    for (int i = 0; i < m.d; ++i) {
        for (int j = 0; j < m.d; ++j) {
            if (j) out << ' ';
            if (m.mask(i, j) != 0.0) {
                out << m.values(i, j);
            } else {
                out << '*';
            }
        }
        out << '\n';
    }
    return out.str();
}

}  // namespace mfc

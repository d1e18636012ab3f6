#pragma once

#include <string>
#include <utility>
#include <vector>

#include "mfc/linalg.hpp"

namespace mfc {

/// A partially observed square matrix. Observed entries are required to be
/// finite and nonzero; values at unobserved positions are ignored.
struct IncompleteMatrix {
    int d = 0;
    Matrix values;  // d x d, meaningful only where mask = 1
    Matrix mask;    // d x d binary

    int observation_count() const { return static_cast<int>(mask.sum()); }
    void validate(bool allow_zero_observed = false) const;
};

struct ObservationGraph {
    std::vector<int> row_vertices;                 // rows with >= 1 observation
    std::vector<int> col_vertices;                 // cols with >= 1 observation
    std::vector<std::pair<int, int>> edges;        // observed (row, col) pairs
};

struct Component {
    std::vector<int> rows;                         // R_p
    std::vector<int> cols;                         // C_p
    std::vector<std::pair<int, int>> edges;
    bool complete_bipartite() const {
        return edges.size() == rows.size() * cols.size();
    }
};

struct ComponentDecomposition {
    std::vector<Component> components;             // ordered by smallest row index
};

enum class ConnectivityClass {
    Connected,
    Disconnected,
    DisconnectedCompleteBipartite,
};

const char* to_string(ConnectivityClass c);

ObservationGraph build_observation_graph(const IncompleteMatrix& m);
ComponentDecomposition connected_components(const ObservationGraph& g);
ConnectivityClass classify_connectivity(const IncompleteMatrix& m);

/// Connectivity of the graph whose nodes are the observed entries, adjacent
/// iff they share a row or a column. Equivalent to the bipartite definition.
bool entry_graph_connected(const IncompleteMatrix& m);

/// Lexicographic minimum of the mask's orbit under row permutations, column
/// permutations, and transposition. Brute force; requires d <= 4.
Matrix canonical_pattern(const Matrix& mask);

/// One representative per canonical class of d x d masks with n observations.
std::vector<Matrix> enumerate_pattern_classes(int d, int n);

/// All distinct masks in the orbit of `mask` under row/col permutation and
/// transposition (the canonical class members themselves).
std::vector<Matrix> pattern_orbit(const Matrix& mask);

// Text format: one row per line, `*` for unobserved, `#` comments and blank
// lines ignored. JSON form: {"d": int, "entries": [[row, col, value], ...]}.
IncompleteMatrix parse_matrix_text(const std::string& text,
                                   bool allow_zero_observed = false);
IncompleteMatrix parse_matrix_json(const std::string& text,
                                   bool allow_zero_observed = false);
IncompleteMatrix load_matrix_file(const std::string& path,
                                  bool allow_zero_observed = false);
std::string format_matrix_text(const IncompleteMatrix& m);

}  // namespace mfc

#pragma once

#include <map>
#include <string>
#include <vector>

#include "sg/graph.hpp"
#include "sg/rational.hpp"

namespace sg {

/// A labeled conductance network: symmetric nonnegative couplings, no
/// self-loops, exact rational entries.  The carrier for traced energy forms.
class Network {
  public:
    Network() = default;
    explicit Network(std::vector<std::string> labels);

    int size() const { return static_cast<int>(labels_.size()); }
    const std::vector<std::string>& labels() const { return labels_; }
    bool has_label(const std::string& l) const { return index_.count(l) > 0; }
    int index_of(const std::string& l) const;

    const Rational& conductance(int i, int j) const;
    const Rational& conductance(const std::string& x, const std::string& y) const;
    void add_conductance(int i, int j, const Rational& c);

    const std::map<int, Rational>& couplings(int i) const { return adj_[static_cast<size_t>(i)]; }

    /// Star-mesh elimination of one vertex; an isolated vertex is deleted
    /// with no coupling updates.
    Network eliminate_vertex(const std::string& label) const;

    /// Kron reduction onto `keep` (|keep| >= 2).  Elimination order defaults
    /// to minimum positive degree; `order` overrides it (labels not in keep,
    /// each exactly once).
    Network trace_to(const std::vector<std::string>& keep,
                     const std::vector<std::string>& order = {}) const;

  private:
    void eliminate_in_place(int v);

    std::vector<std::string> labels_;
    std::map<std::string, int> index_;
    std::vector<std::map<int, Rational>> adj_;  // strictly positive entries only
    static const Rational zero_;
};

/// V_m as a conductance network labeled by canonical addresses.
Network level_network(const LevelGraph& g);

/// trace_to(V_m, E): the quadratic form of the constrained energy minimizer.
Network effective_form(const LevelGraph& g, const std::vector<VertexId>& keep);

/// The traced coefficient c^A_{x,y} vanishes exactly when every V_m path
/// from x to y meets A \ {x,y}.
bool is_zero_coefficient(const LevelGraph& g, const std::vector<VertexId>& a,
                         const VertexId& x, const VertexId& y);

/// The coupled sequences behind the path-length lower bound
/// a_N (5/3)^m <= c^A_{x,y}: a_1 = b_1 = 1, a_{i+1} = a_i/((i+3) b_i),
/// b_{i+1} = 4 (1 + b_i/a_i).
struct LowerBoundSequences {
    std::vector<Rational> a, b;  // 1-based values stored from index 1
    explicit LowerBoundSequences(int n);
};

Rational lower_bound_value(int path_length);

}  // namespace sg

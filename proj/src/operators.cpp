#include "qwalk/operators.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "qwalk/io.hpp"

namespace qwalk::operators {

CoinSpec CoinSpec::grover() {
  CoinSpec spec;
  spec.kind = Kind::grover;
  return spec;
}

CoinSpec CoinSpec::hadamard() {
  CoinSpec spec;
  spec.kind = Kind::hadamard;
  return spec;
}

CoinSpec CoinSpec::custom(std::vector<Complex> matrix) {
  CoinSpec spec;
  spec.kind = Kind::custom;
  spec.custom_matrix = std::move(matrix);
  return spec;
}

CoinSpec CoinSpec::with_marked(std::size_t vertex) const {
  CoinSpec spec = *this;
  spec.marked = Marked{vertex, MarkedKind::minus_identity, {}};
  return spec;
}

CoinSpec CoinSpec::with_marked_custom(std::size_t vertex, std::vector<Complex> matrix) const {
  CoinSpec spec = *this;
  spec.marked = Marked{vertex, MarkedKind::custom, std::move(matrix)};
  return spec;
}

std::vector<Complex> coin_matrix(const CoinSpec& spec, std::size_t degree) {
  const std::size_t d = degree;
  switch (spec.kind) {
    case CoinSpec::Kind::grover: {
      // 2|S_c><S_c| - I
      std::vector<Complex> c(d * d, Complex{2.0 / static_cast<double>(d), 0.0});
      for (std::size_t i = 0; i < d; ++i) {
        c[i * d + i] -= 1.0;
      }
      return c;
    }
    case CoinSpec::Kind::hadamard: {
      if (d != 2) {
        throw std::invalid_argument("hadamard coin requires degree 2, got " +
                                    std::to_string(d));
      }
      const double h = 1.0 / std::sqrt(2.0);
      return {Complex{h, 0}, Complex{h, 0}, Complex{h, 0}, Complex{-h, 0}};
    }
    case CoinSpec::Kind::custom: {
      if (spec.custom_matrix.size() != d * d) {
        throw std::invalid_argument("custom coin matrix has wrong size");
      }
      return spec.custom_matrix;
    }
  }
  throw std::logic_error("unreachable coin kind");
}

std::vector<Complex> marked_coin_matrix(const CoinSpec& spec, std::size_t degree) {
  const std::size_t d = degree;
  if (!spec.marked || spec.marked->kind == CoinSpec::MarkedKind::minus_identity) {
    std::vector<Complex> c(d * d, Complex{0.0, 0.0});
    for (std::size_t i = 0; i < d; ++i) {
      c[i * d + i] = Complex{-1.0, 0.0};
    }
    return c;
  }
  if (spec.marked->matrix.size() != d * d) {
    throw std::invalid_argument("custom marked coin matrix has wrong size");
  }
  return spec.marked->matrix;
}

double coin_deviation(const std::vector<Complex>& matrix, std::size_t degree) {
  const std::size_t d = degree;
  double dev = 0.0;
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      dev = std::max(dev, std::abs(matrix[i * d + j] - std::conj(matrix[j * d + i])));
      Complex prod{0.0, 0.0};
      for (std::size_t k = 0; k < d; ++k) {
        prod += std::conj(matrix[k * d + i]) * matrix[k * d + j];
      }
      const Complex expect = (i == j) ? Complex{1.0, 0.0} : Complex{0.0, 0.0};
      dev = std::max(dev, std::abs(prod - expect));
    }
  }
  return dev;
}

void validate_coin(const CoinSpec& spec, std::size_t degree) {
  const double dev0 = coin_deviation(coin_matrix(spec, degree), degree);
  if (dev0 > kOperatorTol) {
    std::ostringstream oss;
    oss << "coin matrix is not Hermitian-unitary: max deviation " << dev0;
    throw std::invalid_argument(oss.str());
  }
  if (spec.marked) {
    const double dev1 = coin_deviation(marked_coin_matrix(spec, degree), degree);
    if (dev1 > kOperatorTol) {
      std::ostringstream oss;
      oss << "marked coin matrix is not Hermitian-unitary: max deviation " << dev1;
      throw std::invalid_argument(oss.str());
    }
  }
}

SparseOperator build_shift(const graphs::ColoredGraph& g) {
  const graphs::ValidationReport report = graphs::validate(g);
  if (!report.ok()) {
    throw std::invalid_argument("build_shift: invalid graph: " + report.violations.front());
  }
  const std::size_t dim = g.dim();
  std::vector<Triplet> entries;
  entries.reserve(dim);
  for (std::size_t l = 0; l < dim; ++l) {
    entries.push_back({g.pairing[l], l, Complex{1.0, 0.0}});
  }
  SparseOperator s = sparse_from_triplets(dim, std::move(entries));
  s.tags = {true, true, true};
  verify_tags(s);
  return s;
}

SparseOperator build_coin_flip(const graphs::ColoredGraph& g, const CoinSpec& spec) {
  validate_coin(spec, g.degree);
  if (spec.marked && spec.marked->vertex >= g.num_vertices) {
    throw std::invalid_argument("marked vertex out of range");
  }
  const std::size_t n = g.num_vertices;
  const std::size_t d = g.degree;
  const std::vector<Complex> c0 = coin_matrix(spec, d);
  const std::vector<Complex> c1 = marked_coin_matrix(spec, d);

  std::vector<Triplet> entries;
  entries.reserve(n * d * d);
  for (std::size_t v = 0; v < n; ++v) {
    const bool is_marked = spec.marked && spec.marked->vertex == v;
    const std::vector<Complex>& c = is_marked ? c1 : c0;
    for (std::size_t ip = 0; ip < d; ++ip) {
      for (std::size_t i = 0; i < d; ++i) {
        const Complex value = c[ip * d + i];
        if (std::abs(value) > 0.0) {
          entries.push_back({graphs::flat_index(ip, v, n), graphs::flat_index(i, v, n), value});
        }
      }
    }
  }
  SparseOperator f = sparse_from_triplets(g.dim(), std::move(entries));
  f.tags = {true, true, true};
  verify_tags(f);
  return f;
}

SparseOperator build_hamiltonian(const SparseOperator& s, const SparseOperator& f,
                                 HamiltonianForm form) {
  if (s.dim != f.dim) {
    throw std::invalid_argument("build_hamiltonian: dimension mismatch");
  }
  SparseOperator h;
  if (form == HamiltonianForm::s_minus_f) {
    h = sparse_add(s, f, 1.0, -1.0);
  } else {
    h = sparse_add(sparse_add(s, f), sparse_identity(s.dim), 1.0, -2.0);
  }
  h.tags.hermitian = true;
  verify_tags(h);
  return h;
}

std::string to_coordinate_text(const SparseOperator& a) {
  std::ostringstream oss;
  oss << a.dim << " " << a.dim << " " << a.nnz() << "\n";
  for (std::size_t r = 0; r < a.dim; ++r) {
    for (std::size_t k = a.row_ptr[r]; k < a.row_ptr[r + 1]; ++k) {
      oss << r << " " << a.col[k] << " " << io::format_g17(a.val[k].real()) << " "
          << io::format_g17(a.val[k].imag()) << "\n";
    }
  }
  return oss.str();
}

}  // namespace qwalk::operators

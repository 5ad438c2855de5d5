#include "horolab/weightlab/module.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace horolab::weightlab {

namespace {

void combinations(int n, int d, int start, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
  if (static_cast<int>(cur.size()) == d) {
    out.push_back(cur);
    return;
  }
  for (int i = start; i < n; ++i) {
    cur.push_back(i);
    combinations(n, d, i + 1, cur, out);
    cur.pop_back();
  }
}

std::string strip(const std::string& s) {
  size_t b = s.find_first_not_of(" \t");
  size_t e = s.find_last_not_of(" \t");
  return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
}

Matrix<Rational> adjoint_basis_matrix(int n, const std::vector<std::pair<int, int>>& offdiag, int idx) {
  const int off = static_cast<int>(offdiag.size());
  Matrix<Rational> m(n + 1, n + 1);
  if (idx < off) {
    m(offdiag[idx].first, offdiag[idx].second) = 1;
  } else {
    int k = idx - off;
    m(k, k) = 1;
    m(k + 1, k + 1) = -1;
  }
  return m;
}

template <class T>
std::vector<T> adjoint_coords(const Matrix<T>& m, const std::vector<std::pair<int, int>>& offdiag) {
  const int n = m.rows() - 1;
  std::vector<T> c;
  c.reserve(offdiag.size() + n);
  for (auto [i, j] : offdiag) c.push_back(m(i, j));
  T acc(0);
  for (int k = 0; k < n; ++k) {
    acc += m(k, k);
    c.push_back(acc);
  }
  return c;
}

}  // namespace

ModulePtr WeightModule::standard(int n) { return exterior(1, n); }

ModulePtr WeightModule::exterior(int d, int n) {
  if (n < 1) throw std::invalid_argument("module: n must be >= 1");
  if (d < 1 || d > n + 1) throw std::invalid_argument("module: exterior degree must lie in 1..n+1");
  auto m = std::shared_ptr<WeightModule>(new WeightModule());
  m->kind_ = d == 1 ? ModuleKind::Standard : ModuleKind::Exterior;
  m->name_ = d == 1 ? "standard" : "exterior(" + std::to_string(d) + ")";
  m->n_ = n;
  m->degree_ = d;
  std::vector<int> cur;
  combinations(n + 1, d, 0, cur, m->subsets_);
  for (const auto& s : m->subsets_) {
    std::string label;
    std::vector<Rational> ch(n + 1, Rational(0));
    for (size_t k = 0; k < s.size(); ++k) {
      if (k) label += "^";
      label += "e" + std::to_string(s[k]);
      ch[s[k]] += 1;
    }
    m->labels_.push_back(label);
    m->characters_.push_back(ch);
  }
  m->finish_weights();
  return m;
}

ModulePtr WeightModule::adjoint(int n) {
  if (n < 1) throw std::invalid_argument("module: n must be >= 1");
  auto m = std::shared_ptr<WeightModule>(new WeightModule());
  m->kind_ = ModuleKind::Adjoint;
  m->name_ = "adjoint";
  m->n_ = n;
  for (int i = 0; i <= n; ++i)
    for (int j = 0; j <= n; ++j)
      if (i != j) {
        m->offdiag_.emplace_back(i, j);
        m->labels_.push_back("E" + std::to_string(i) + std::to_string(j));
        std::vector<Rational> ch(n + 1, Rational(0));
        ch[i] += 1;
        ch[j] -= 1;
        m->characters_.push_back(ch);
      }
  for (int k = 0; k < n; ++k) {
    m->labels_.push_back("H" + std::to_string(k));
    m->characters_.emplace_back(n + 1, Rational(0));
  }
  m->finish_weights();
  return m;
}

ModulePtr WeightModule::tensor(ModulePtr a, ModulePtr b) {
  if (!a || !b) throw std::invalid_argument("module: null tensor factor");
  if (a->kind_ == ModuleKind::Tensor || b->kind_ == ModuleKind::Tensor)
    throw std::invalid_argument("module: tensor depth is limited to 2");
  if (a->n_ != b->n_) throw std::invalid_argument("module: tensor factors must share n");
  auto m = std::shared_ptr<WeightModule>(new WeightModule());
  m->kind_ = ModuleKind::Tensor;
  m->name_ = "tensor(" + a->name_ + "," + b->name_ + ")";
  m->n_ = a->n_;
  m->left_ = a;
  m->right_ = b;
  for (int i = 0; i < a->dimension(); ++i)
    for (int j = 0; j < b->dimension(); ++j) {
      m->labels_.push_back(a->labels_[i] + "(x)" + b->labels_[j]);
      std::vector<Rational> ch = a->characters_[i];
      for (int k = 0; k <= m->n_; ++k) ch[k] += b->characters_[j][k];
      m->characters_.push_back(ch);
    }
  m->finish_weights();
  return m;
}

ModulePtr WeightModule::build(const std::string& raw, int n) {
  const std::string kind = strip(raw);
  if (kind == "standard") return standard(n);
  if (kind == "adjoint") return adjoint(n);
  auto inner = [&](const std::string& prefix) -> std::string {
    if (kind.rfind(prefix + "(", 0) != 0 || kind.back() != ')')
      throw std::invalid_argument("module: unsupported kind '" + kind + "'");
    return kind.substr(prefix.size() + 1, kind.size() - prefix.size() - 2);
  };
  if (kind.rfind("exterior", 0) == 0) {
    const std::string arg = strip(inner("exterior"));
    size_t pos = 0;
    int d = 0;
    try {
      d = std::stoi(arg, &pos);
    } catch (const std::exception&) {
      pos = 0;
    }
    if (pos == 0 || pos != arg.size()) throw std::invalid_argument("module: bad exterior degree '" + arg + "'");
    return exterior(d, n);
  }
  if (kind.rfind("tensor", 0) == 0) {
    const std::string args = inner("tensor");
    int depth = 0;
    for (size_t i = 0; i < args.size(); ++i) {
      if (args[i] == '(') ++depth;
      if (args[i] == ')') --depth;
      if (args[i] == ',' && depth == 0) return tensor(build(args.substr(0, i), n), build(args.substr(i + 1), n));
    }
    throw std::invalid_argument("module: tensor needs two factors");
  }
  throw std::invalid_argument("module: unsupported kind '" + kind + "'");
}

void WeightModule::finish_weights() {
  weights_.clear();
  for (const auto& ch : characters_) weights_.push_back(Weight::from_character(ch));
}

template <class T>
Matrix<T> WeightModule::rho(const Matrix<T>& g) const {
  if (g.rows() != n_ + 1 || g.cols() != n_ + 1) throw std::invalid_argument("rho: matrix size mismatch");
  switch (kind_) {
    case ModuleKind::Standard:
      return g;
    case ModuleKind::Exterior: {
      const int dim = dimension();
      Matrix<T> out(dim, dim);
      Matrix<T> minor(degree_, degree_);
      for (int r = 0; r < dim; ++r)
        for (int c = 0; c < dim; ++c) {
          for (int a = 0; a < degree_; ++a)
            for (int b = 0; b < degree_; ++b) minor(a, b) = g(subsets_[r][a], subsets_[c][b]);
          out(r, c) = determinant(minor);
        }
      return out;
    }
    case ModuleKind::Adjoint: {
      const int dim = dimension();
      const Matrix<T> ginv = inverse(g);
      Matrix<T> out(dim, dim);
      for (int c = 0; c < dim; ++c) {
        Matrix<T> y = convert<T>(adjoint_basis_matrix(n_, offdiag_, c));
        auto coords = adjoint_coords(g * y * ginv, offdiag_);
        for (int r = 0; r < dim; ++r) out(r, c) = coords[r];
      }
      return out;
    }
    case ModuleKind::Tensor:
      return kron(left_->rho(g), right_->rho(g));
  }
  throw std::logic_error("rho: unknown module kind");
}

template Matrix<Rational> WeightModule::rho<Rational>(const Matrix<Rational>&) const;
template Matrix<double> WeightModule::rho<double>(const Matrix<double>&) const;
template Matrix<HiReal> WeightModule::rho<HiReal>(const Matrix<HiReal>&) const;

Matrix<Rational> WeightModule::drho(const Matrix<Rational>& x) const {
  if (x.rows() != n_ + 1 || x.cols() != n_ + 1) throw std::invalid_argument("drho: matrix size mismatch");
  const int dim = dimension();
  switch (kind_) {
    case ModuleKind::Standard:
      return x;
    case ModuleKind::Exterior: {
      std::map<std::vector<int>, int> index;
      for (int k = 0; k < dim; ++k) index[subsets_[k]] = k;
      Matrix<Rational> out(dim, dim);
      for (int c = 0; c < dim; ++c) {
        const auto& js = subsets_[c];
        for (int p = 0; p < degree_; ++p)
          for (int i = 0; i <= n_; ++i) {
            const Rational& coef = x(i, js[p]);
            if (sgn(coef) == 0) continue;
            if (i != js[p] && std::find(js.begin(), js.end(), i) != js.end()) continue;
            std::vector<int> ks = js;
            ks[p] = i;
            int sign = 1;
            for (int a = 0; a < degree_; ++a)
              for (int b = a + 1; b < degree_; ++b)
                if (ks[a] > ks[b]) sign = -sign;
            std::sort(ks.begin(), ks.end());
            out(index.at(ks), c) += sign * coef;
          }
      }
      return out;
    }
    case ModuleKind::Adjoint: {
      Matrix<Rational> out(dim, dim);
      for (int c = 0; c < dim; ++c) {
        auto coords = adjoint_coords(commutator(x, adjoint_basis_matrix(n_, offdiag_, c)), offdiag_);
        for (int r = 0; r < dim; ++r) out(r, c) = coords[r];
      }
      return out;
    }
    case ModuleKind::Tensor: {
      const int da = left_->dimension(), db = right_->dimension();
      return kron(left_->drho(x), Matrix<Rational>::identity(db)) + kron(Matrix<Rational>::identity(da), right_->drho(x));
    }
  }
  throw std::logic_error("drho: unknown module kind");
}

ModuleVector::ModuleVector(ModulePtr module, std::vector<Rational> coords)
    : module_(std::move(module)), coords_(std::move(coords)) {
  if (!module_) throw std::invalid_argument("ModuleVector: null module");
  if (static_cast<int>(coords_.size()) != module_->dimension())
    throw std::invalid_argument("ModuleVector: coordinate count does not match module dimension");
  for (auto& c : coords_) c.canonicalize();
}

ModuleVector ModuleVector::zero(ModulePtr module) {
  const int d = module->dimension();
  return ModuleVector(std::move(module), std::vector<Rational>(d, Rational(0)));
}

ModuleVector ModuleVector::basis(ModulePtr module, int idx) {
  ModuleVector v = zero(std::move(module));
  v.coords_.at(idx) = 1;
  return v;
}

bool ModuleVector::is_zero() const {
  return std::all_of(coords_.begin(), coords_.end(), [](const Rational& c) { return sgn(c) == 0; });
}

Rational ModuleVector::norm() const { return sup_norm(coords_); }

ModuleVector ModuleVector::operator+(const ModuleVector& o) const {
  std::vector<Rational> c = coords_;
  for (size_t i = 0; i < c.size(); ++i) c[i] += o.coords_.at(i);
  return ModuleVector(module_, std::move(c));
}

ModuleVector ModuleVector::operator-(const ModuleVector& o) const { return *this + o * Rational(-1); }

ModuleVector ModuleVector::operator*(const Rational& s) const {
  std::vector<Rational> c = coords_;
  for (auto& x : c) x *= s;
  return ModuleVector(module_, std::move(c));
}

std::string ModuleVector::to_string() const {
  std::string s;
  for (int i = 0; i < dimension(); ++i) {
    if (sgn(coords_[i]) == 0) continue;
    if (!s.empty()) s += " + ";
    s += "(" + horolab::to_string(coords_[i]) + ")" + module_->basis_labels()[i];
  }
  return s.empty() ? "0" : s;
}

}  // namespace horolab::weightlab

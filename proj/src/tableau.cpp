#include "cliffcut/tableau.hpp"

#include <bit>
#include <cassert>

namespace cliffcut {

namespace {

inline bool test_bit(const uint64_t* words, uint32_t i) {
  return (words[i >> 6] >> (i & 63)) & 1u;
}
inline void set_bit(uint64_t* words, uint32_t i, bool v) {
  uint64_t mask = uint64_t{1} << (i & 63);
  if (v) {
    words[i >> 6] |= mask;
  } else {
    words[i >> 6] &= ~mask;
  }
}

// i-exponent masks for multiplying Pauli strings A*B, per 64 positions:
// +1 where (A,B) is (X,Y),(Y,Z),(Z,X); -1 where (X,Z),(Y,X),(Z,Y).
struct GMasks {
  uint64_t pos, neg;
};
inline GMasks g_masks(uint64_t ax, uint64_t az, uint64_t bx, uint64_t bz) {
  uint64_t a_x = ax & ~az, a_y = ax & az, a_z = ~ax & az;
  return {
      (a_x & bx & bz) | (a_y & ~bx & bz) | (a_z & bx & ~bz),
      (a_x & ~bx & bz) | (a_y & bx & ~bz) | (a_z & bx & bz),
  };
}

// Row-major Pauli rows with signs; scratch space for Gaussian elimination.
struct PauliMat {
  uint32_t n_cols = 0;
  uint32_t words = 0;
  std::vector<std::vector<uint64_t>> x, z;
  std::vector<uint8_t> sign;

  PauliMat(uint32_t rows, uint32_t cols)
      : n_cols(cols),
        words((cols + 63) / 64),
        x(rows, std::vector<uint64_t>(words, 0)),
        z(rows, std::vector<uint64_t>(words, 0)),
        sign(rows, 0) {}

  size_t rows() const { return x.size(); }

  // dst <- dst * src. Valid for commuting rows (real product).
  void mult_into(size_t dst, size_t src) {
    int cnt = 0;
    for (uint32_t w = 0; w < words; ++w) {
      auto [pos, neg] = g_masks(x[dst][w], z[dst][w], x[src][w], z[src][w]);
      cnt += std::popcount(pos) - std::popcount(neg);
      x[dst][w] ^= x[src][w];
      z[dst][w] ^= z[src][w];
    }
    int total = (cnt + 2 * (sign[dst] + sign[src])) & 3;
    assert((total & 1) == 0 && "product of anticommuting rows");
    sign[dst] = static_cast<uint8_t>(total >> 1);
  }
};

}  // namespace

CompiledClifford compile_clifford(const Circuit& c) {
  CompiledClifford out;
  out.n_qubits = c.n_qubits;
  out.steps.reserve(c.gates.size());
  for (const auto& g : c.gates) {
    if (!is_clifford_gate(g)) {
      throw NonCliffordError(std::string("non-Clifford gate '") + gate_name(g.kind) +
                             "' in stabilizer path");
    }
    for (const auto& p : clifford_decomposition(g)) {
      switch (p.kind) {
        case GateKind::I: break;
        case GateKind::H: out.steps.push_back({CompiledClifford::H, p.q0, 0}); break;
        case GateKind::S: out.steps.push_back({CompiledClifford::S, p.q0, 0}); break;
        case GateKind::Sdg: out.steps.push_back({CompiledClifford::Sdg, p.q0, 0}); break;
        case GateKind::X: out.steps.push_back({CompiledClifford::X, p.q0, 0}); break;
        case GateKind::Y: out.steps.push_back({CompiledClifford::Y, p.q0, 0}); break;
        case GateKind::Z: out.steps.push_back({CompiledClifford::Z, p.q0, 0}); break;
        case GateKind::SqrtX: out.steps.push_back({CompiledClifford::SqrtX, p.q0, 0}); break;
        case GateKind::CX: out.steps.push_back({CompiledClifford::CX, p.q0, p.q1}); break;
        case GateKind::CZ: out.steps.push_back({CompiledClifford::CZ, p.q0, p.q1}); break;
        case GateKind::Swap: out.steps.push_back({CompiledClifford::Swap, p.q0, p.q1}); break;
        default:
          throw NonCliffordError("unexpected gate in decomposition");
      }
    }
  }
  return out;
}

Tableau::Tableau(uint32_t n_qubits) : n_(n_qubits) {
  if (n_qubits == 0) throw std::invalid_argument("tableau: zero qubits");
  row_words_ = (2 * n_ + 63) / 64;
  xs_.assign(size_t{n_} * row_words_, 0);
  zs_.assign(size_t{n_} * row_words_, 0);
  phase_.assign(row_words_, 0);
  reset();
}

void Tableau::reset() {
  std::fill(xs_.begin(), xs_.end(), 0);
  std::fill(zs_.begin(), zs_.end(), 0);
  std::fill(phase_.begin(), phase_.end(), 0);
  for (uint32_t q = 0; q < n_; ++q) {
    set_bit(xs(q), q, true);       // destabilizer q = X_q
    set_bit(zs(q), n_ + q, true);  // stabilizer q = Z_q
  }
}

bool Tableau::x_bit(uint32_t row, uint32_t q) const { return test_bit(xs(q), row); }
bool Tableau::z_bit(uint32_t row, uint32_t q) const { return test_bit(zs(q), row); }
bool Tableau::phase_bit(uint32_t row) const { return test_bit(phase_.data(), row); }

void Tableau::h(uint32_t q) {
  uint64_t* X = xs(q);
  uint64_t* Z = zs(q);
  for (uint32_t w = 0; w < row_words_; ++w) {
    phase_[w] ^= X[w] & Z[w];
    std::swap(X[w], Z[w]);
  }
}

void Tableau::s(uint32_t q) {
  uint64_t* X = xs(q);
  uint64_t* Z = zs(q);
  for (uint32_t w = 0; w < row_words_; ++w) {
    phase_[w] ^= X[w] & Z[w];
    Z[w] ^= X[w];
  }
}

void Tableau::sdg(uint32_t q) {
  uint64_t* X = xs(q);
  uint64_t* Z = zs(q);
  for (uint32_t w = 0; w < row_words_; ++w) {
    phase_[w] ^= X[w] & ~Z[w];
    Z[w] ^= X[w];
  }
}

void Tableau::x(uint32_t q) {
  const uint64_t* Z = zs(q);
  for (uint32_t w = 0; w < row_words_; ++w) phase_[w] ^= Z[w];
}

void Tableau::y(uint32_t q) {
  const uint64_t* X = xs(q);
  const uint64_t* Z = zs(q);
  for (uint32_t w = 0; w < row_words_; ++w) phase_[w] ^= X[w] ^ Z[w];
}

void Tableau::z(uint32_t q) {
  const uint64_t* X = xs(q);
  for (uint32_t w = 0; w < row_words_; ++w) phase_[w] ^= X[w];
}

void Tableau::sqrt_x(uint32_t q) {
  // sqrt(X) = H S H up to global phase.
  h(q);
  s(q);
  h(q);
}

void Tableau::cx(uint32_t c, uint32_t t) {
  uint64_t* Xc = xs(c);
  uint64_t* Zc = zs(c);
  uint64_t* Xt = xs(t);
  uint64_t* Zt = zs(t);
  for (uint32_t w = 0; w < row_words_; ++w) {
    phase_[w] ^= Xc[w] & Zt[w] & ~(Xt[w] ^ Zc[w]);
    Xt[w] ^= Xc[w];
    Zc[w] ^= Zt[w];
  }
}

void Tableau::cz(uint32_t a, uint32_t b) {
  h(b);
  cx(a, b);
  h(b);
}

void Tableau::swap_q(uint32_t a, uint32_t b) {
  std::swap_ranges(xs(a), xs(a) + row_words_, xs(b));
  std::swap_ranges(zs(a), zs(a) + row_words_, zs(b));
}

void Tableau::apply(const Gate& g) {
  if (g.q0 >= n_ || (g.q1 != kNoQubit && g.q1 >= n_)) {
    throw std::out_of_range("tableau: qubit index out of range");
  }
  if (!is_clifford_gate(g)) {
    throw NonCliffordError(std::string("non-Clifford gate '") + gate_name(g.kind) +
                           "' in stabilizer path");
  }
  for (const auto& p : clifford_decomposition(g)) {
    switch (p.kind) {
      case GateKind::I: break;
      case GateKind::H: h(p.q0); break;
      case GateKind::S: s(p.q0); break;
      case GateKind::Sdg: sdg(p.q0); break;
      case GateKind::X: x(p.q0); break;
      case GateKind::Y: y(p.q0); break;
      case GateKind::Z: z(p.q0); break;
      case GateKind::SqrtX: sqrt_x(p.q0); break;
      case GateKind::CX: cx(p.q0, p.q1); break;
      case GateKind::CZ: cz(p.q0, p.q1); break;
      case GateKind::Swap: swap_q(p.q0, p.q1); break;
      default: break;
    }
  }
}

void Tableau::run(const CompiledClifford& ops) {
  if (ops.n_qubits != n_) throw std::invalid_argument("tableau: qubit count mismatch");
  for (const auto& st : ops.steps) {
    switch (st.op) {
      case CompiledClifford::H: h(st.q0); break;
      case CompiledClifford::S: s(st.q0); break;
      case CompiledClifford::Sdg: sdg(st.q0); break;
      case CompiledClifford::X: x(st.q0); break;
      case CompiledClifford::Y: y(st.q0); break;
      case CompiledClifford::Z: z(st.q0); break;
      case CompiledClifford::SqrtX: sqrt_x(st.q0); break;
      case CompiledClifford::CX: cx(st.q0, st.q1); break;
      case CompiledClifford::CZ: cz(st.q0, st.q1); break;
      case CompiledClifford::Swap: swap_q(st.q0, st.q1); break;
    }
  }
}

int Tableau::find_stabilizer_pivot(uint32_t q) const {
  const uint64_t* X = xs(q);
  uint32_t w0 = n_ >> 6;
  for (uint32_t w = w0; w < row_words_; ++w) {
    uint64_t word = X[w];
    if (w == w0) word &= ~uint64_t{0} << (n_ & 63);
    if (word) return static_cast<int>(64 * w + std::countr_zero(word));
  }
  return -1;
}

Tableau::MeasureResult Tableau::measure_z(uint32_t q, Rng& rng) {
  if (q >= n_) throw std::out_of_range("tableau: qubit index out of range");
  int pivot = find_stabilizer_pivot(q);

  if (pivot < 0) {
    // Deterministic: the outcome is the sign of the product of stabilizer
    // partners of destabilizers that anticommute with Z_q.
    uint32_t qwords = (n_ + 63) / 64;
    std::vector<uint64_t> ax(qwords, 0), az(qwords, 0), rx(qwords, 0), rz(qwords, 0);
    int acc_exp = 0;
    const uint64_t* Xq = xs(q);
    uint32_t destab_words = (n_ + 63) / 64;
    for (uint32_t w = 0; w < destab_words; ++w) {
      uint64_t word = Xq[w];
      if (w == destab_words - 1 && (n_ & 63)) word &= (uint64_t{1} << (n_ & 63)) - 1;
      while (word) {
        uint32_t i = 64 * w + static_cast<uint32_t>(std::countr_zero(word));
        word &= word - 1;
        uint32_t row = n_ + i;
        for (uint32_t c = 0; c < qwords; ++c) rx[c] = rz[c] = 0;
        for (uint32_t qq = 0; qq < n_; ++qq) {
          if (test_bit(xs(qq), row)) rx[qq >> 6] |= uint64_t{1} << (qq & 63);
          if (test_bit(zs(qq), row)) rz[qq >> 6] |= uint64_t{1} << (qq & 63);
        }
        int cnt = 0;
        for (uint32_t c = 0; c < qwords; ++c) {
          auto [pos, neg] = g_masks(ax[c], az[c], rx[c], rz[c]);
          cnt += std::popcount(pos) - std::popcount(neg);
          ax[c] ^= rx[c];
          az[c] ^= rz[c];
        }
        acc_exp = (acc_exp + cnt + 2 * (phase_bit(row) ? 1 : 0)) & 3;
      }
    }
    assert((acc_exp & 1) == 0);
    // The accumulated product is +-Z_q.
    return {acc_exp >> 1, true};
  }

  uint32_t p = static_cast<uint32_t>(pivot);
  bool outcome = rng.next_bit();

  // Gather row p once (it is the multiplier for every anticommuting row).
  uint32_t qwords = (n_ + 63) / 64;
  std::vector<uint64_t> px(qwords, 0), pz(qwords, 0);
  std::vector<uint32_t> support;
  for (uint32_t qq = 0; qq < n_; ++qq) {
    bool bx = test_bit(xs(qq), p);
    bool bz = test_bit(zs(qq), p);
    if (bx) px[qq >> 6] |= uint64_t{1} << (qq & 63);
    if (bz) pz[qq >> 6] |= uint64_t{1} << (qq & 63);
    if (bx || bz) support.push_back(qq);
  }
  bool p_sign = phase_bit(p);

  // Word-parallel row multiplication: row_i <- row_i * row_p for every row i
  // (either half) whose X bit at q is set, 64 rows per pass. c0/c1 hold the
  // per-row i-exponent count mod 4; commuting products land on even counts.
  for (uint32_t w = 0; w < row_words_; ++w) {
    uint64_t m = xs(q)[w];
    if (w == (p >> 6)) m &= ~(uint64_t{1} << (p & 63));
    if (!m) continue;
    uint64_t c0 = 0, c1 = 0;
    for (uint32_t qq : support) {
      bool Px = (px[qq >> 6] >> (qq & 63)) & 1u;
      bool Pz = (pz[qq >> 6] >> (qq & 63)) & 1u;
      uint64_t Xi = xs(qq)[w];
      uint64_t Zi = zs(qq)[w];
      uint64_t a_pos, a_neg;
      if (Px && !Pz) {
        a_pos = Xi & Zi;
        a_neg = ~Xi & Zi;
      } else if (Px && Pz) {
        a_pos = ~Xi & Zi;
        a_neg = Xi & ~Zi;
      } else {
        a_pos = Xi & ~Zi;
        a_neg = Xi & Zi;
      }
      c1 ^= c0 & a_pos;
      c0 ^= a_pos;
      c1 ^= a_neg & ~c0;
      c0 ^= a_neg;
      if (Px) xs(qq)[w] ^= m;
      if (Pz) zs(qq)[w] ^= m;
    }
    phase_[w] ^= m & (p_sign ? c1 ^ ~uint64_t{0} : c1);
  }

  // Old stabilizer row p becomes the destabilizer partner; row p collapses to
  // (+-) Z_q with the sampled sign.
  uint32_t d = p - n_;
  for (uint32_t qq = 0; qq < n_; ++qq) {
    bool bx = (px[qq >> 6] >> (qq & 63)) & 1u;
    bool bz = (pz[qq >> 6] >> (qq & 63)) & 1u;
    set_bit(xs(qq), d, bx);
    set_bit(zs(qq), d, bz);
    set_bit(xs(qq), p, false);
    set_bit(zs(qq), p, qq == q);
  }
  set_bit(phase_.data(), d, p_sign);
  set_bit(phase_.data(), p, outcome);
  return {outcome ? 1 : 0, false};
}

bool Tableau::check_invariants() const {
  auto commutes = [&](uint32_t r1, uint32_t r2) {
    int anti = 0;
    for (uint32_t q = 0; q < n_; ++q) {
      bool x1 = x_bit(r1, q), z1 = z_bit(r1, q);
      bool x2 = x_bit(r2, q), z2 = z_bit(r2, q);
      if ((x1 && z2) != (z1 && x2)) anti ^= 1;
    }
    return anti == 0;
  };
  for (uint32_t r = 0; r < 2 * n_; ++r) {
    bool nonzero = false;
    for (uint32_t q = 0; q < n_ && !nonzero; ++q) nonzero = x_bit(r, q) || z_bit(r, q);
    if (!nonzero) return false;
  }
  for (uint32_t i = 0; i < n_; ++i) {
    for (uint32_t j = 0; j < n_; ++j) {
      if (!commutes(n_ + i, n_ + j)) return false;               // stabilizers commute
      if (!commutes(i, j)) return false;                         // destabilizers commute
      bool want_anti = (i == j);
      if (commutes(i, n_ + j) == want_anti) return false;        // pairing
    }
  }
  return true;
}

namespace {

// Packs stabilizer rows of t into row-major form.
PauliMat snapshot_stabilizers(const Tableau& t) {
  uint32_t n = t.num_qubits();
  PauliMat m(n, n);
  for (uint32_t i = 0; i < n; ++i) {
    for (uint32_t q = 0; q < n; ++q) {
      if (t.x_bit(n + i, q)) m.x[i][q >> 6] |= uint64_t{1} << (q & 63);
      if (t.z_bit(n + i, q)) m.z[i][q >> 6] |= uint64_t{1} << (q & 63);
    }
    m.sign[i] = t.phase_bit(n + i) ? 1 : 0;
  }
  return m;
}

inline bool row_bit(const std::vector<uint64_t>& row, uint32_t c) {
  return (row[c >> 6] >> (c & 63)) & 1u;
}

}  // namespace

AffineSupport measured_support(const Tableau& t, const std::vector<uint32_t>& measured) {
  const uint32_t n = t.num_qubits();
  AffineSupport out;
  out.n_bits = static_cast<uint32_t>(measured.size());
  uint32_t mwords = (out.n_bits + 63) / 64;
  out.base.assign(mwords, 0);
  if (measured.empty()) return out;

  PauliMat m = snapshot_stabilizers(t);

  // Stage 1: eliminate X components. Rows 0..r-1 end with X pivots; the
  // remaining rows are Z-only and encode parity constraints on the outcome.
  uint32_t r = 0;
  for (uint32_t col = 0; col < n && r < n; ++col) {
    uint32_t piv = r;
    while (piv < n && !row_bit(m.x[piv], col)) ++piv;
    if (piv == n) continue;
    std::swap(m.x[piv], m.x[r]);
    std::swap(m.z[piv], m.z[r]);
    std::swap(m.sign[piv], m.sign[r]);
    for (uint32_t j = 0; j < n; ++j) {
      if (j != r && row_bit(m.x[j], col)) m.mult_into(j, r);
    }
    ++r;
  }

  // Stage 2: reduced row echelon on the Z-only constraint system [Z | sign].
  const uint32_t ncon = n - r;
  std::vector<std::vector<uint64_t>> C(ncon);
  std::vector<uint8_t> rhs(ncon);
  for (uint32_t i = 0; i < ncon; ++i) {
    C[i] = m.z[r + i];
    rhs[i] = m.sign[r + i];
  }
  std::vector<int> pivot_col(ncon, -1);
  uint32_t ri = 0;
  for (uint32_t col = 0; col < n && ri < ncon; ++col) {
    uint32_t piv = ri;
    while (piv < ncon && !row_bit(C[piv], col)) ++piv;
    if (piv == ncon) continue;
    std::swap(C[piv], C[ri]);
    std::swap(rhs[piv], rhs[ri]);
    for (uint32_t j = 0; j < ncon; ++j) {
      if (j != ri && row_bit(C[j], col)) {
        for (uint32_t w = 0; w < C[j].size(); ++w) C[j][w] ^= C[ri][w];
        rhs[j] ^= rhs[ri];
      }
    }
    pivot_col[ri] = static_cast<int>(col);
    ++ri;
  }
  if (ri != ncon) throw std::logic_error("dependent stabilizer generators");

  // Particular solution: free bits zero, pivot bits take the rhs.
  uint32_t nwords = (n + 63) / 64;
  std::vector<uint64_t> b0(nwords, 0);
  std::vector<uint8_t> is_pivot(n, 0);
  for (uint32_t i = 0; i < ncon; ++i) {
    is_pivot[pivot_col[i]] = 1;
    if (rhs[i]) b0[pivot_col[i] >> 6] |= uint64_t{1} << (pivot_col[i] & 63);
  }

  // Null-space basis: one vector per free column.
  std::vector<std::vector<uint64_t>> dirs;
  dirs.reserve(r);
  for (uint32_t f = 0; f < n; ++f) {
    if (is_pivot[f]) continue;
    std::vector<uint64_t> v(nwords, 0);
    v[f >> 6] |= uint64_t{1} << (f & 63);
    for (uint32_t i = 0; i < ncon; ++i) {
      if (row_bit(C[i], f)) v[pivot_col[i] >> 6] |= uint64_t{1} << (pivot_col[i] & 63);
    }
    dirs.push_back(std::move(v));
  }

  // Project base and directions onto the measured positions.
  auto project = [&](const std::vector<uint64_t>& full) {
    std::vector<uint64_t> p(mwords, 0);
    for (uint32_t j = 0; j < out.n_bits; ++j) {
      uint32_t q = measured[j];
      if ((full[q >> 6] >> (q & 63)) & 1u) p[j >> 6] |= uint64_t{1} << (j & 63);
    }
    return p;
  };
  out.base = project(b0);
  std::vector<std::vector<uint64_t>> proj;
  proj.reserve(dirs.size());
  for (const auto& v : dirs) proj.push_back(project(v));

  // Reduce the projected directions to an independent basis.
  uint32_t rank = 0;
  for (uint32_t col = 0; col < out.n_bits && rank < proj.size(); ++col) {
    uint32_t piv = rank;
    while (piv < proj.size() && !row_bit(proj[piv], col)) ++piv;
    if (piv == proj.size()) continue;
    std::swap(proj[piv], proj[rank]);
    for (uint32_t j = 0; j < proj.size(); ++j) {
      if (j != rank && row_bit(proj[j], col)) {
        for (uint32_t w = 0; w < mwords; ++w) proj[j][w] ^= proj[rank][w];
      }
    }
    ++rank;
  }
  proj.resize(rank);
  out.basis = std::move(proj);
  return out;
}

namespace {

std::string support_key(const std::vector<uint64_t>& packed, uint32_t n_bits) {
  std::string key(n_bits, '0');
  for (uint32_t j = 0; j < n_bits; ++j) {
    if ((packed[j >> 6] >> (j & 63)) & 1u) key[j] = '1';
  }
  return key;
}

Tableau run_circuit(const Circuit& c) {
  CompiledClifford ops = compile_clifford(c);
  Tableau t(c.n_qubits);
  t.run(ops);
  return t;
}

}  // namespace

Distribution exact_distribution(const Circuit& c, uint64_t cap) {
  Tableau t = run_circuit(c);
  std::vector<uint32_t> measured(c.measured.begin(), c.measured.end());
  AffineSupport sup = measured_support(t, measured);
  Distribution d(sup.n_bits);
  if (measured.empty()) {
    d.add("", 1.0);
    return d;
  }
  uint32_t dim = sup.dim();
  if (dim >= 63 || (uint64_t{1} << dim) > cap) throw SupportTooLarge(dim);
  uint64_t count = uint64_t{1} << dim;
  double p = 1.0 / static_cast<double>(count);
  std::vector<uint64_t> cur = sup.base;
  d.weights.emplace(support_key(cur, sup.n_bits), p);
  for (uint64_t i = 1; i < count; ++i) {
    // Gray-code walk: one basis vector flips per step.
    uint32_t flip = static_cast<uint32_t>(std::countr_zero(i));
    for (size_t w = 0; w < cur.size(); ++w) cur[w] ^= sup.basis[flip][w];
    d.weights.emplace(support_key(cur, sup.n_bits), p);
  }
  return d;
}

Distribution sample_counts(const Circuit& c, uint64_t shots, Rng& rng) {
  CompiledClifford ops = compile_clifford(c);
  std::vector<uint32_t> measured(c.measured.begin(), c.measured.end());
  Distribution d(static_cast<uint32_t>(measured.size()));
  if (shots == 0) return d;
  std::map<std::string, uint64_t> counts;
  Tableau t(c.n_qubits);
  std::string key(measured.size(), '0');
  for (uint64_t s = 0; s < shots; ++s) {
    t.reset();
    t.run(ops);
    for (size_t j = 0; j < measured.size(); ++j) {
      key[j] = t.measure_z(measured[j], rng).bit ? '1' : '0';
    }
    ++counts[key];
  }
  double inv = 1.0 / static_cast<double>(shots);
  for (const auto& [k, n] : counts) d.weights.emplace(k, static_cast<double>(n) * inv);
  return d;
}

Distribution sample_support(const Circuit& c, uint64_t shots, Rng& rng) {
  Tableau t = run_circuit(c);
  std::vector<uint32_t> measured(c.measured.begin(), c.measured.end());
  AffineSupport sup = measured_support(t, measured);
  Distribution d(sup.n_bits);
  if (shots == 0) return d;
  if (measured.empty()) {
    d.add("", 1.0);
    return d;
  }
  std::map<std::string, uint64_t> counts;
  std::vector<uint64_t> cur(sup.base.size());
  for (uint64_t s = 0; s < shots; ++s) {
    cur = sup.base;
    for (const auto& v : sup.basis) {
      if (rng.next_bit()) {
        for (size_t w = 0; w < cur.size(); ++w) cur[w] ^= v[w];
      }
    }
    ++counts[support_key(cur, sup.n_bits)];
  }
  double inv = 1.0 / static_cast<double>(shots);
  for (const auto& [k, n] : counts) d.weights.emplace(k, static_cast<double>(n) * inv);
  return d;
}

}  // namespace cliffcut

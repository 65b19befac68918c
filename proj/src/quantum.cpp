#include "nonloc/quantum.hpp"

#include <cmath>
#include <cstdlib>
#include <sstream>

namespace nonloc {

namespace {

bool finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

double max_abs_diff(const Operator& a, const Operator& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.entries.size(); ++i)
        m = std::max(m, std::abs(a.entries[i] - b.entries[i]));
    return m;
}

int checked_product(const std::vector<int>& dims) {
    long long p = 1;
    for (int d : dims) {
        if (d < 1) throw ValidationError("party dimension must be >= 1");
        p *= d;
        if (p > kMaxTotalDim) {
            std::ostringstream os;
            os << "total dimension " << p << " exceeds the cap of " << kMaxTotalDim;
            throw CapExceededError(os.str());
        }
    }
    return static_cast<int>(p);
}

}  // namespace

std::uint64_t enum_cap() {
    if (const char* env = std::getenv("NONLOCALITY_ENUM_CAP")) {
        char* end = nullptr;
        unsigned long long v = std::strtoull(env, &end, 10);
        if (end != env && *end == '\0' && v > 0) return v;
    }
    return kDefaultEnumCap;
}

int StateVector::total_dim() const { return checked_product(dims); }

void StateVector::validate() const {
    const std::size_t want = static_cast<std::size_t>(total_dim());
    if (amplitudes.size() != want)
        throw ValidationError("amplitude count does not match the product of party dimensions");
    double norm2 = 0.0;
    for (Complex z : amplitudes) {
        if (!finite(z)) throw ValidationError("non-finite amplitude");
        norm2 += std::norm(z);
    }
    if (std::abs(norm2 - 1.0) > kEpsNorm)
        throw ValidationError("state vector is not normalized");
}

void Operator::validate_hermitian() const {
    if (dim < 1 || entries.size() != static_cast<std::size_t>(dim) * dim)
        throw ValidationError("operator entry count does not match its dimension");
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) {
            if (!finite(at(i, j))) throw ValidationError("non-finite operator entry");
            if (std::abs(at(i, j) - std::conj(at(j, i))) > kEpsHerm)
                throw ValidationError("operator is not Hermitian");
        }
}

int ProjectiveMeasurement::max_label() const {
    int m = -1;
    for (int l : labels) m = std::max(m, l);
    return m + 1;
}

void ProjectiveMeasurement::validate() const {
    if (projectors.empty()) throw ValidationError("measurement has no projectors");
    if (labels.size() != projectors.size())
        throw ValidationError("measurement needs one label per projector");
    for (int l : labels)
        if (l < 0) throw ValidationError("outcome labels must be nonnegative");
    Operator sum = identity_op(dim);
    for (auto& e : sum.entries) e = 0.0;
    for (const Operator& p : projectors) {
        if (p.dim != dim) throw ValidationError("projector dimension mismatch");
        p.validate_hermitian();
        if (max_abs_diff(op_mul(p, p), p) > kEpsHerm)
            throw ValidationError("measurement element is not idempotent");
        sum = op_add(sum, p);
    }
    for (std::size_t i = 0; i < projectors.size(); ++i)
        for (std::size_t j = i + 1; j < projectors.size(); ++j) {
            Operator prod = op_mul(projectors[i], projectors[j]);
            double m = 0.0;
            for (Complex z : prod.entries) m = std::max(m, std::abs(z));
            if (m > kEpsHerm) throw ValidationError("measurement projectors are not orthogonal");
        }
    if (max_abs_diff(sum, identity_op(dim)) > kEpsHerm)
        throw ValidationError("measurement projectors do not sum to the identity");
}

Operator identity_op(int dim) {
    Operator op;
    op.dim = dim;
    op.entries.assign(static_cast<std::size_t>(dim) * dim, Complex(0, 0));
    for (int i = 0; i < dim; ++i) op.at(i, i) = 1.0;
    return op;
}

Operator op_add(const Operator& a, const Operator& b) {
    if (a.dim != b.dim) throw ValidationError("operator dimension mismatch");
    Operator r = a;
    for (std::size_t i = 0; i < r.entries.size(); ++i) r.entries[i] += b.entries[i];
    return r;
}

Operator op_sub(const Operator& a, const Operator& b) {
    if (a.dim != b.dim) throw ValidationError("operator dimension mismatch");
    Operator r = a;
    for (std::size_t i = 0; i < r.entries.size(); ++i) r.entries[i] -= b.entries[i];
    return r;
}

Operator op_mul(const Operator& a, const Operator& b) {
    if (a.dim != b.dim) throw ValidationError("operator dimension mismatch");
    Operator r;
    r.dim = a.dim;
    r.entries.assign(a.entries.size(), Complex(0, 0));
    for (int i = 0; i < a.dim; ++i)
        for (int k = 0; k < a.dim; ++k) {
            Complex aik = a.at(i, k);
            if (aik == Complex(0, 0)) continue;
            for (int j = 0; j < a.dim; ++j) r.at(i, j) += aik * b.at(k, j);
        }
    return r;
}

Operator op_scale(Complex s, const Operator& a) {
    Operator r = a;
    for (auto& e : r.entries) e *= s;
    return r;
}

std::vector<Complex> op_apply(const Operator& op, const std::vector<Complex>& v) {
    if (v.size() != static_cast<std::size_t>(op.dim))
        throw ValidationError("operator/vector dimension mismatch");
    std::vector<Complex> r(v.size(), Complex(0, 0));
    for (int i = 0; i < op.dim; ++i)
        for (int j = 0; j < op.dim; ++j) r[i] += op.at(i, j) * v[j];
    return r;
}

StateVector tensor_state(const StateVector& a, const StateVector& b) {
    StateVector r;
    r.dims = a.dims;
    r.dims.insert(r.dims.end(), b.dims.begin(), b.dims.end());
    checked_product(r.dims);
    r.amplitudes.resize(a.amplitudes.size() * b.amplitudes.size());
    const std::size_t nb = b.amplitudes.size();
    for (std::size_t i = 0; i < a.amplitudes.size(); ++i)
        for (std::size_t j = 0; j < nb; ++j)
            r.amplitudes[i * nb + j] = a.amplitudes[i] * b.amplitudes[j];
    return r;
}

Operator tensor_op(const Operator& a, const Operator& b) {
    checked_product({a.dim, b.dim});
    Operator r;
    r.dim = a.dim * b.dim;
    r.entries.assign(static_cast<std::size_t>(r.dim) * r.dim, Complex(0, 0));
    for (int i1 = 0; i1 < a.dim; ++i1)
        for (int j1 = 0; j1 < a.dim; ++j1)
            for (int i2 = 0; i2 < b.dim; ++i2)
                for (int j2 = 0; j2 < b.dim; ++j2)
                    r.at(i1 * b.dim + i2, j1 * b.dim + j2) = a.at(i1, j1) * b.at(i2, j2);
    return r;
}

Operator pauli_x() { return {2, {0, 1, 1, 0}}; }
Operator pauli_y() { return {2, {0, Complex(0, -1), Complex(0, 1), 0}}; }
Operator pauli_z() { return {2, {1, 0, 0, -1}}; }

Operator bloch_observable(double nx, double ny, double nz) {
    double n = std::sqrt(nx * nx + ny * ny + nz * nz);
    if (std::abs(n - 1.0) > 1e-9) throw ValidationError("Bloch direction must be a unit vector");
    Operator r = op_add(op_add(op_scale(nx, pauli_x()), op_scale(ny, pauli_y())),
                        op_scale(nz, pauli_z()));
    return r;
}

ProjectiveMeasurement bloch_measurement(double nx, double ny, double nz) {
    Operator obs = bloch_observable(nx, ny, nz);
    ProjectiveMeasurement m;
    m.dim = 2;
    m.projectors = {op_scale(0.5, op_add(identity_op(2), obs)),
                    op_scale(0.5, op_sub(identity_op(2), obs))};
    m.labels = {0, 1};
    return m;
}

double outcome_probability(const StateVector& state,
                           const std::vector<ProjectiveMeasurement>& per_party,
                           const std::vector<int>& outcome) {
    state.validate();
    if (per_party.size() != state.dims.size())
        throw ValidationError("need one measurement per party");
    if (outcome.size() != per_party.size())
        throw ValidationError("need one outcome label per party");

    Operator joint;
    for (std::size_t p = 0; p < per_party.size(); ++p) {
        const ProjectiveMeasurement& m = per_party[p];
        if (m.dim != state.dims[p]) throw ValidationError("measurement/state dimension mismatch");
        int k = -1;
        for (std::size_t i = 0; i < m.labels.size(); ++i)
            if (m.labels[i] == outcome[p]) { k = static_cast<int>(i); break; }
        if (k < 0) {
            std::ostringstream os;
            os << "outcome label " << outcome[p] << " not offered by party " << p
               << "'s measurement";
            throw ValidationError(os.str());
        }
        joint = (p == 0) ? m.projectors[k] : tensor_op(joint, m.projectors[k]);
    }

    std::vector<Complex> pv = op_apply(joint, state.amplitudes);
    Complex ip(0, 0);
    for (std::size_t i = 0; i < pv.size(); ++i) ip += std::conj(state.amplitudes[i]) * pv[i];
    double p = ip.real();
    if (p < -kEpsProb || p > 1.0 + kEpsProb)
        throw ValidationError("Born probability outside [0, 1]");
    return std::min(1.0, std::max(0.0, p));
}

double expectation(const StateVector& state, const std::vector<Operator>& observables) {
    state.validate();
    if (observables.size() != state.dims.size())
        throw ValidationError("need one observable per party");
    Operator joint;
    for (std::size_t p = 0; p < observables.size(); ++p) {
        if (observables[p].dim != state.dims[p])
            throw ValidationError("observable/state dimension mismatch");
        observables[p].validate_hermitian();
        joint = (p == 0) ? observables[p] : tensor_op(joint, observables[p]);
    }
    std::vector<Complex> ov = op_apply(joint, state.amplitudes);
    Complex ip(0, 0);
    for (std::size_t i = 0; i < ov.size(); ++i) ip += std::conj(state.amplitudes[i]) * ov[i];
    double e = ip.real();
    if (std::abs(e) > 1.0 + 1e-6)
        throw ValidationError("expectation outside [-1, 1]; observable spectrum is not +/-1");
    return std::min(1.0, std::max(-1.0, e));
}

}  // namespace nonloc

#include "qmetro/state_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "qmetro/errors.hpp"

namespace qmetro {

namespace {

std::string fmt17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

} // namespace

void save_state(std::ostream& os, const TwoModeState& state) {
    os << "qmetro-state 1\n";
    os << "cutoff " << state.basis()->cutoff() << "\n";
    os << "kind " << (state.is_pure() ? "pure" : "mixed") << "\n";
    os << "trace_tail " << fmt17(state.trace_tail()) << "\n";
    if (state.is_pure()) {
        const auto& a = state.amplitudes();
        os << "entries " << a.size() << "\n";
        for (int i = 0; i < a.size(); ++i)
            os << fmt17(a[i].real()) << " " << fmt17(a[i].imag()) << "\n";
    } else {
        const auto& rho = state.density();
        os << "entries " << rho.size() << "\n";
        for (int i = 0; i < rho.rows(); ++i)
            for (int j = 0; j < rho.cols(); ++j)
                os << fmt17(rho(i, j).real()) << " " << fmt17(rho(i, j).imag()) << "\n";
    }
}

void save_state_file(const std::string& path, const TwoModeState& state) {
    std::ofstream f(path);
    if (!f) throw invalid_argument_error("cannot open " + path + " for writing");
    save_state(f, state);
}

TwoModeState load_state(std::istream& is) {
    std::string magic;
    int version = 0;
    is >> magic >> version;
    if (magic != "qmetro-state" || version != 1)
        throw invalid_argument_error("not a qmetro-state v1 stream");

    std::string key, kind;
    int cutoff = 0;
    double tail = 0.0;
    long entries = 0;
    is >> key >> cutoff;
    if (key != "cutoff") throw invalid_argument_error("expected cutoff line");
    is >> key >> kind;
    if (key != "kind" || (kind != "pure" && kind != "mixed"))
        throw invalid_argument_error("expected kind pure|mixed");
    is >> key >> tail;
    if (key != "trace_tail") throw invalid_argument_error("expected trace_tail line");
    is >> key >> entries;
    if (key != "entries") throw invalid_argument_error("expected entries line");

    auto basis = make_basis(cutoff);
    const long dim = basis->dim();
    if (kind == "pure") {
        if (entries != dim) throw invalid_argument_error("entry count does not match basis");
        Eigen::VectorXcd a(dim);
        for (long i = 0; i < dim; ++i) {
            double re, im;
            if (!(is >> re >> im)) throw invalid_argument_error("truncated state stream");
            a[i] = Complex(re, im);
        }
        return TwoModeState::pure(basis, std::move(a), tail);
    }
    if (entries != dim * dim)
        throw invalid_argument_error("entry count does not match basis");
    Eigen::MatrixXcd rho(dim, dim);
    for (long i = 0; i < dim; ++i)
        for (long j = 0; j < dim; ++j) {
            double re, im;
            if (!(is >> re >> im)) throw invalid_argument_error("truncated state stream");
            rho(i, j) = Complex(re, im);
        }
    return TwoModeState::mixed(basis, std::move(rho), tail);
}

TwoModeState load_state_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw invalid_argument_error("cannot open " + path);
    return load_state(f);
}

} // namespace qmetro

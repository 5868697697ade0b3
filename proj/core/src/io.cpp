#include <dqsvt/io.hpp>

#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>

namespace dqsvt {

namespace {

class Reader {
  public:
    explicit Reader(std::istream& in) : in_(in) {}

    // Next non-empty line split into tokens; false at end of input.
    bool line(std::vector<std::string>& tokens) {
        std::string raw;
        while (std::getline(in_, raw)) {
            ++line_;
            if (auto hash = raw.find('#'); hash != std::string::npos) raw.resize(hash);
            std::istringstream ss(raw);
            tokens.clear();
            for (std::string t; ss >> t;) tokens.push_back(std::move(t));
            if (!tokens.empty()) return true;
        }
        return false;
    }

    std::vector<std::string> require_line(const char* what) {
        std::vector<std::string> t;
        if (!line(t)) throw ParseError(std::string("unexpected end of input, expected ") + what, line_ + 1);
        return t;
    }

    // Next numeric token, crossing line boundaries.
    double number(const char* what) {
        while (pos_ >= pending_.size()) {
            pending_ = require_line(what);
            pos_ = 0;
        }
        return to_double(pending_[pos_++], what);
    }

    void finish_tokens(const char* what) {
        if (pos_ < pending_.size()) throw ParseError(std::string("trailing tokens after ") + what, line_);
        pending_.clear();
        pos_ = 0;
    }

    void expect_end() {
        finish_tokens("data");
        std::vector<std::string> t;
        if (line(t)) throw ParseError("unexpected content after the last record", line_);
    }

    double to_double(const std::string& s, const char* what) const {
        double v = 0.0;
        const auto* end = s.data() + s.size();
        auto [ptr, ec] = std::from_chars(s.data(), end, v);
        if (ec != std::errc{} || ptr != end || !std::isfinite(v)) {
            throw ParseError(std::string("expected a finite number for ") + what + ", got '" + s + "'", line_);
        }
        return v;
    }

    long long to_int(const std::string& s, const char* what) const {
        long long v = 0;
        const auto* end = s.data() + s.size();
        auto [ptr, ec] = std::from_chars(s.data(), end, v);
        if (ec != std::errc{} || ptr != end) {
            throw ParseError(std::string("expected an integer for ") + what + ", got '" + s + "'", line_);
        }
        return v;
    }

    std::size_t current() const noexcept { return line_; }

  private:
    std::istream& in_;
    std::size_t line_ = 0;
    std::vector<std::string> pending_;
    std::size_t pos_ = 0;
};

void expect_count(const std::vector<std::string>& t, std::size_t n, const char* what, std::size_t line) {
    if (t.size() != n) {
        throw ParseError(std::string(what) + ": expected " + std::to_string(n) + " fields, got " +
                             std::to_string(t.size()),
                         line);
    }
}

std::ostream& full_precision(std::ostream& out) { return out << std::setprecision(17); }

template <class F>
auto with_file(const std::filesystem::path& path, F&& parse) {
    std::ifstream in(path);
    if (!in) throw InvalidInput("cannot open " + path.string());
    try {
        return parse(in);
    } catch (const ParseError& e) {
        throw ParseError::in_context(path.string(), e);
    }
}

template <class F>
void to_file(const std::filesystem::path& path, F&& write) {
    std::ofstream out(path);
    if (!out) throw InvalidInput("cannot write " + path.string());
    write(out);
    if (!out) throw InvalidInput("write failed for " + path.string());
}

}  // namespace

// ---------------------------------------------------------------------------
// Matrix

SparseMatrix parse_matrix(std::istream& in) {
    Reader r(in);
    auto h = r.require_line("matrix header");
    expect_count(h, 4, "matrix header", r.current());
    const auto rows = r.to_int(h[0], "M");
    const auto cols = r.to_int(h[1], "N");
    const auto nnz = r.to_int(h[2], "nnz");
    const auto s = r.to_int(h[3], "s");
    if (rows <= 0 || cols <= 0 || nnz < 0 || s < 0) throw ParseError("matrix header values out of range", r.current());

    std::vector<Triplet> entries;
    entries.reserve(static_cast<std::size_t>(nnz));
    std::vector<Index> row_count(static_cast<std::size_t>(rows), 0);
    std::vector<Index> col_count(static_cast<std::size_t>(cols), 0);
    long long prev_i = 0;
    long long prev_j = 0;
    for (long long k = 0; k < nnz; ++k) {
        auto t = r.require_line("matrix entry");
        expect_count(t, 4, "matrix entry", r.current());
        const auto i = r.to_int(t[0], "row");
        const auto j = r.to_int(t[1], "column");
        if (i < 1 || i > rows || j < 1 || j > cols) throw ParseError("matrix entry position out of range", r.current());
        if (k > 0 && (i < prev_i || (i == prev_i && j <= prev_j))) {
            throw ParseError("matrix entries must be in strictly ascending (i, j) order", r.current());
        }
        prev_i = i;
        prev_j = j;
        const Complex v{r.to_double(t[2], "real part"), r.to_double(t[3], "imaginary part")};
        if (v == Complex{}) continue;
        if (++row_count[i - 1] > static_cast<Index>(s) || ++col_count[j - 1] > static_cast<Index>(s)) {
            throw ParseError("sparsity " + std::to_string(s) + " exceeded", r.current());
        }
        entries.push_back({static_cast<Index>(i - 1), static_cast<Index>(j - 1), v});
    }
    r.expect_end();
    return SparseMatrix(static_cast<Index>(rows), static_cast<Index>(cols), std::move(entries),
                        static_cast<Index>(s));
}

void write_matrix(std::ostream& out, const SparseMatrix& a) {
    const auto entries = a.triplets();
    full_precision(out) << a.rows() << ' ' << a.cols() << ' ' << entries.size() << ' ' << a.sparsity() << '\n';
    for (const auto& t : entries) {
        out << t.row + 1 << ' ' << t.col + 1 << ' ' << t.value.real() << ' ' << t.value.imag() << '\n';
    }
}

// ---------------------------------------------------------------------------
// Vector

std::vector<Complex> parse_vector(std::istream& in) {
    Reader r(in);
    auto h = r.require_line("vector header");
    expect_count(h, 1, "vector header", r.current());
    const auto n = r.to_int(h[0], "N");
    if (n <= 0) throw ParseError("vector dimension must be positive", r.current());
    std::vector<Complex> v(static_cast<std::size_t>(n));
    for (auto& x : v) {
        auto t = r.require_line("vector entry");
        expect_count(t, 2, "vector entry", r.current());
        x = {r.to_double(t[0], "real part"), r.to_double(t[1], "imaginary part")};
    }
    r.expect_end();
    return v;
}

void write_vector(std::ostream& out, std::span<const Complex> v) {
    full_precision(out) << v.size() << '\n';
    for (const auto& x : v) out << x.real() << ' ' << x.imag() << '\n';
}

// ---------------------------------------------------------------------------
// Polynomial

EvenPolynomial parse_polynomial(std::istream& in) {
    Reader r(in);
    auto h = r.require_line("polynomial header");
    expect_count(h, 2, "polynomial header", r.current());
    const bool cheb = h[0] == "EVEN_CHEBYSHEV";
    if (!cheb && h[0] != "EVEN") throw ParseError("polynomial header must start with EVEN or EVEN_CHEBYSHEV", r.current());
    const auto degree = r.to_int(h[1], "degree");
    if (degree < 0 || degree % 2 != 0) throw ParseError("polynomial degree must be even and nonnegative", r.current());
    std::vector<double> c(static_cast<std::size_t>(degree / 2 + 1));
    for (auto& x : c) {
        auto t = r.require_line("coefficient");
        expect_count(t, 1, "coefficient", r.current());
        x = r.to_double(t[0], "coefficient");
    }
    r.expect_end();
    return cheb ? EvenPolynomial::chebyshev(std::move(c)) : EvenPolynomial::monomial(std::move(c));
}

void write_polynomial(std::ostream& out, const EvenPolynomial& p) {
    full_precision(out) << (p.basis() == EvenPolynomial::Basis::kChebyshev ? "EVEN_CHEBYSHEV " : "EVEN ")
                        << p.degree() << '\n';
    for (double c : p.coefficients()) out << c << '\n';
}

// ---------------------------------------------------------------------------
// Hamiltonian

LocalHamiltonian parse_hamiltonian(std::istream& in) {
    Reader r(in);
    auto h = r.require_line("hamiltonian header");
    expect_count(h, 3, "hamiltonian header", r.current());
    LocalHamiltonian out;
    out.n = static_cast<int>(r.to_int(h[0], "n"));
    out.k = static_cast<int>(r.to_int(h[1], "k"));
    const auto m = r.to_int(h[2], "m");
    if (out.n < 0 || out.k < 0 || m < 0) throw ParseError("hamiltonian header values out of range", r.current());
    if (out.k > kMaxLocality) throw ParseError("locality above " + std::to_string(kMaxLocality), r.current());
    for (long long t = 0; t < m; ++t) {
        auto q = r.require_line("term qubits");
        LocalTerm term;
        if (static_cast<int>(q.size()) > out.k) throw ParseError("term acts on more than k qubits", r.current());
        for (const auto& s : q) {
            const auto idx = r.to_int(s, "qubit");
            if (idx < 1 || idx > out.n) throw ParseError("qubit index out of range", r.current());
            term.qubits.push_back(static_cast<int>(idx - 1));
        }
        const std::size_t line = r.current();
        const Index bd = term.block_dim();
        term.block.resize(bd * bd);
        for (auto& x : term.block) {
            const double re = r.number("block entry");
            const double im = r.number("block entry");
            x = {re, im};
        }
        r.finish_tokens("term block");
        out.terms.push_back(std::move(term));
        try {
            LocalHamiltonian single{out.n, out.k, {out.terms.back()}};
            single.validate();
        } catch (const Error& e) {
            throw ParseError(e.what(), line);
        }
    }
    r.expect_end();
    return out;
}

void write_hamiltonian(std::ostream& out, const LocalHamiltonian& h) {
    full_precision(out) << h.n << ' ' << h.k << ' ' << h.terms.size() << '\n';
    for (const auto& t : h.terms) {
        for (std::size_t q = 0; q < t.qubits.size(); ++q) out << (q ? " " : "") << t.qubits[q] + 1;
        out << '\n';
        const Index bd = t.block_dim();
        for (Index r = 0; r < bd; ++r) {
            for (Index c = 0; c < bd; ++c) {
                const Complex v = t.block[r * bd + c];
                out << (c ? " " : "") << v.real() << ' ' << v.imag();
            }
            out << '\n';
        }
    }
}

// ---------------------------------------------------------------------------
// Circuit

Circuit parse_circuit(std::istream& in) {
    Reader r(in);
    auto h = r.require_line("circuit header");
    expect_count(h, 3, "circuit header", r.current());
    Circuit c;
    c.n = static_cast<int>(r.to_int(h[0], "n"));
    c.p = static_cast<int>(r.to_int(h[1], "p"));
    const auto m = r.to_int(h[2], "m");
    if (c.n < 0 || c.p < 0 || c.n + c.p == 0 || m < 0) throw ParseError("circuit header values out of range", r.current());
    const int wires = c.n + c.p;
    auto wire = [&](const std::string& s) {
        const auto w = r.to_int(s, "wire");
        if (w < 1 || w > wires) throw ParseError("wire out of range", r.current());
        return static_cast<int>(w - 1);
    };

    std::vector<std::string> t;
    while (r.line(t)) {
        const std::string& name = t[0];
        try {
            if (name == "OUT") {
                expect_count(t, 2, "OUT", r.current());
                c.output = wire(t[1]);
            } else if (name == "MAT2" || name == "MAT4") {
                const std::size_t nw = name == "MAT2" ? 1 : 2;
                const std::size_t ne = name == "MAT2" ? 4 : 16;
                expect_count(t, 1 + nw + 2 * ne, name.c_str(), r.current());
                std::vector<int> ws;
                for (std::size_t k = 0; k < nw; ++k) ws.push_back(wire(t[1 + k]));
                std::vector<Complex> u(ne);
                for (std::size_t k = 0; k < ne; ++k) {
                    u[k] = {r.to_double(t[1 + nw + 2 * k], "entry"), r.to_double(t[2 + nw + 2 * k], "entry")};
                }
                c.gates.push_back(Gate::matrix(std::move(ws), std::move(u)));
            } else {
                std::vector<int> ws;
                for (std::size_t k = 1; k < t.size(); ++k) ws.push_back(wire(t[k]));
                c.gates.push_back(Gate::standard(name, std::move(ws)));
            }
        } catch (const ParseError&) {
            throw;
        } catch (const Error& e) {
            throw ParseError(e.what(), r.current());
        }
    }
    if (static_cast<long long>(c.gates.size()) != m) {
        throw ParseError("header declares " + std::to_string(m) + " gates, found " + std::to_string(c.gates.size()),
                         r.current());
    }
    try {
        c.validate();
    } catch (const Error& e) {
        throw ParseError(e.what(), 0);
    }
    return c;
}

void write_circuit(std::ostream& out, const Circuit& c) {
    full_precision(out) << c.n << ' ' << c.p << ' ' << c.gates.size() << '\n';
    for (const auto& g : c.gates) {
        out << g.name;
        for (int w : g.wires) out << ' ' << w + 1;
        if (g.name == "MAT2" || g.name == "MAT4") {
            for (const auto& v : g.unitary) out << ' ' << v.real() << ' ' << v.imag();
        }
        out << '\n';
    }
    if (c.output >= 0) out << "OUT " << c.output + 1 << '\n';
}

// ---------------------------------------------------------------------------
// Files

SparseMatrix load_matrix(const std::filesystem::path& path) {
    return with_file(path, [](std::istream& in) { return parse_matrix(in); });
}
std::vector<Complex> load_vector(const std::filesystem::path& path) {
    return with_file(path, [](std::istream& in) { return parse_vector(in); });
}
EvenPolynomial load_polynomial(const std::filesystem::path& path) {
    return with_file(path, [](std::istream& in) { return parse_polynomial(in); });
}
LocalHamiltonian load_hamiltonian(const std::filesystem::path& path) {
    return with_file(path, [](std::istream& in) { return parse_hamiltonian(in); });
}
Circuit load_circuit(const std::filesystem::path& path) {
    return with_file(path, [](std::istream& in) { return parse_circuit(in); });
}

void save_matrix(const std::filesystem::path& path, const SparseMatrix& a) {
    to_file(path, [&](std::ostream& out) { write_matrix(out, a); });
}
void save_vector(const std::filesystem::path& path, std::span<const Complex> v) {
    to_file(path, [&](std::ostream& out) { write_vector(out, v); });
}
void save_polynomial(const std::filesystem::path& path, const EvenPolynomial& p) {
    to_file(path, [&](std::ostream& out) { write_polynomial(out, p); });
}
void save_hamiltonian(const std::filesystem::path& path, const LocalHamiltonian& h) {
    to_file(path, [&](std::ostream& out) { write_hamiltonian(out, h); });
}
void save_circuit(const std::filesystem::path& path, const Circuit& c) {
    to_file(path, [&](std::ostream& out) { write_circuit(out, c); });
}

}  // namespace dqsvt

#include "iwasawa/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "iwasawa/families.hpp"
#include "iwasawa/json_io.hpp"
#include "iwasawa/kan.hpp"
#include "iwasawa/linalg.hpp"
#include "iwasawa/spectral_frame.hpp"
#include "iwasawa/triangular.hpp"

namespace iwasawa {

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Streams {
    std::ostream& primary;
    std::ostream& summary;
    std::optional<std::string> out_path;

    void emit(const std::string& text) const {
        if (out_path)
            io::write_text_file(*out_path, text);
        else
            primary << text;
    }
};

Streams route(std::ostream& out, std::ostream& err, const std::string& out_path) {
    if (out_path.empty()) return {out, err, std::nullopt};
    return {out, out, out_path};
}

std::string fmt6(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

void print_report(std::ostream& os, const std::vector<Residual>& rows, const std::vector<Residual>& notes = {}) {
    std::size_t width = 8;
    for (const auto& r : rows) width = std::max(width, r.name.size());
    for (const auto& r : notes) width = std::max(width, r.name.size());
    auto pad = [&](const std::string& s) { return s + std::string(width - s.size() + 2, ' '); };
    os << pad("residual") << "value         bound         status\n";
    for (const auto& r : rows) {
        std::string v = fmt6(r.value);
        std::string b = fmt6(r.bound);
        v.resize(std::max<std::size_t>(v.size(), 12), ' ');
        b.resize(std::max<std::size_t>(b.size(), 12), ' ');
        os << pad(r.name) << v << "  " << b << "  " << (r.ok() ? "ok" : "FAIL") << '\n';
    }
    for (const auto& r : notes) os << pad(r.name) << fmt6(r.value) << '\n';
}

void require_readable(const std::string& path, const char* flag) {
    if (!std::filesystem::is_regular_file(path))
        throw UsageError(std::string(flag) + ": cannot read '" + path + "'");
}

void require_writable(const std::string& path) {
    if (path.empty()) return;
    const auto parent = std::filesystem::path(path).parent_path();
    if (!parent.empty() && !std::filesystem::is_directory(parent))
        throw UsageError("--out: directory '" + parent.string() + "' does not exist");
}

bool numeric_kind(ErrorKind k) {
    switch (k) {
        case ErrorKind::Singular:
        case ErrorKind::ConvergenceFailure:
        case ErrorKind::NotPositive:
        case ErrorKind::SingularCompression: return true;
        default: return false;
    }
}

std::vector<std::size_t> parse_sizes(const std::string& list) {
    std::vector<std::size_t> sizes;
    std::stringstream ss(list);
    std::string token;
    while (std::getline(ss, token, ',')) {
        if (token.empty() || token.size() > 9 ||
            !std::all_of(token.begin(), token.end(), [](unsigned char c) { return std::isdigit(c); }))
            throw UsageError("--sizes: '" + token + "' is not a positive integer");
        const std::size_t n = std::stoul(token);
        if (n < 2) throw UsageError("--sizes: size " + token + " is below the minimum of 2");
        sizes.push_back(n);
    }
    if (sizes.empty() || list.back() == ',') throw UsageError("--sizes: expected a comma-separated list");
    return sizes;
}

struct FactorizeArgs {
    std::string input, x0, family, out;
    double tol = kResidualTol;
};

int cmd_factorize(const FactorizeArgs& a, std::ostream& out, std::ostream& err) {
    require_readable(a.input, "--input");
    require_readable(a.x0, "--x0");
    require_writable(a.out);
    if (!(a.tol > 0.0)) throw UsageError("--tol must be positive");
    std::optional<FamilyTag> family;
    if (!a.family.empty()) family = parse_family(a.family);

    const ComplexMatrix g = io::read_matrix_file(a.input);
    const ComplexMatrix x0 = io::read_matrix_file(a.x0);
    std::optional<StructureContext> ctx;
    if (family) ctx = structure_context(*family, g.rows());
    const SpectralFrame frame = build_frame(x0);
    const KanFactors f = kan_factor(frame, g);
    const MembershipReport report = verify_kan(frame, g, f, ctx, {a.tol, 1e-8});

    const Streams s = route(out, err, a.out);
    s.emit(io::dump(io::factors_to_json(f, report)));
    s.summary << "frame: " << frame.block_count() << " clusters, " << to_string(classify(frame)) << '\n';
    print_report(s.summary, report.residuals, report.diagnostics);
    return report.passed ? kExitOk : kExitNumeric;
}

struct DecomposeArgs {
    std::string input, x0, out;
};

int cmd_decompose(const DecomposeArgs& a, std::ostream& out, std::ostream& err) {
    require_readable(a.input, "--input");
    require_readable(a.x0, "--x0");
    require_writable(a.out);
    const ComplexMatrix x = io::read_matrix_file(a.input);
    const ComplexMatrix x0 = io::read_matrix_file(a.x0);
    if (!x.square()) {
        std::ostringstream msg;
        msg << "--input: expected a square matrix, got " << x.rows() << "x" << x.cols();
        throw UsageError(msg.str());
    }
    const SpectralFrame frame = build_frame(x0);
    const TriadicParts parts = triadic_decompose(frame, x);

    MembershipReport report;
    const double bound = kResidualTol * (1.0 + frobenius_norm(x));
    report.add("k + a + n = X", frobenius_norm(parts.k_part + parts.a_part + parts.n_part - x), bound);
    report.add("k skew-Hermitian", frobenius_norm(parts.k_part + adjoint(parts.k_part)), bound);
    const ComplexMatrix af = to_frame(frame, parts.a_part);
    report.add("a Hermitian block diagonal",
               hermitian_defect(af) + frobenius_norm(af - keep_diagonal_blocks(frame, af)), bound);
    const ComplexMatrix nf = to_frame(frame, parts.n_part);
    report.add("n strictly upper", frobenius_norm(nf - keep_strict_upper_blocks(frame, nf)), bound);

    const Streams s = route(out, err, a.out);
    s.emit(io::dump(io::parts_to_json(parts, report)));
    print_report(s.summary, report.residuals);
    return report.passed ? kExitOk : kExitNumeric;
}

struct HilbertArgs {
    std::string sizes = "16,32,64,128,256,512,1024";
    std::string out;
};

int cmd_demo_hilbert(const HilbertArgs& a, std::ostream& out, std::ostream& err) {
    const std::vector<std::size_t> sizes = parse_sizes(a.sizes);
    require_writable(a.out);
    const std::vector<GrowthRow> rows = truncation_growth(sizes);

    const Streams s = route(out, err, a.out);
    std::ostringstream csv;
    io::write_growth_csv(csv, rows);
    s.emit(csv.str());
    s.summary << "n         rho_inf     rho_2\n";
    for (const auto& r : rows) {
        std::string n = std::to_string(r.n);
        std::string ri = fmt6(r.ratio_op);
        n.resize(std::max<std::size_t>(n.size(), 10), ' ');
        ri.resize(std::max<std::size_t>(ri.size(), 12), ' ');
        s.summary << n << ri << fmt6(r.ratio_s2) << '\n';
    }
    return kExitOk;
}

struct VerifyArgs {
    std::string family;
    std::size_t dim = 0;
    std::size_t trials = 50;
    std::uint64_t seed = 1;
};

int cmd_verify(const VerifyArgs& a, std::ostream& out) {
    const FamilyTag family = parse_family(a.family);
    if (auto why = dimension_violation(family, a.dim))
        throw UsageError(std::string("--dim ") + std::to_string(a.dim) + " for family " + to_string(family) + ": " +
                         *why);
    if (a.trials == 0) throw UsageError("--trials must be positive");
    const ClosureSummary summary = closure_study(family, a.dim, a.trials, a.seed);
    out << "family " << to_string(family) << ", dim " << a.dim << ", " << a.trials << " trials, seed " << a.seed
        << ", frame " << to_string(summary.regularity) << '\n';
    print_report(out, summary.worst);
    out << (summary.passed ? "all residuals within bounds" : "residual bound exceeded") << '\n';
    return summary.passed ? kExitOk : kExitNumeric;
}

struct BasisArgs {
    std::string family, out;
    std::size_t dim = 0;
};

int cmd_basis(const BasisArgs& a, std::ostream& out, std::ostream& err) {
    const FamilyTag family = parse_family(a.family);
    if (auto why = dimension_violation(family, a.dim))
        throw UsageError(std::string("--dim ") + std::to_string(a.dim) + " for family " + to_string(family) + ": " +
                         *why);
    require_writable(a.out);
    const StructureContext ctx = structure_context(family, a.dim);

    const Streams s = route(out, err, a.out);
    s.emit(io::dump(io::context_to_json(ctx)));
    s.summary << "family " << to_string(family) << ", dim " << a.dim << ": operators";
    if (ctx.J) s.summary << " J";
    if (ctx.Jt) s.summary << " Jt";
    if (ctx.V) s.summary << " V";
    if (!ctx.J && !ctx.Jt && !ctx.V) s.summary << " none";
    s.summary << '\n';
    for (const auto& inv : ctx.invariants)
        s.summary << (inv.ok() ? "verified " : "FAILED   ") << inv.name << " (residual " << fmt6(inv.value) << ")\n";
    return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Iwasawa decompositions of classical matrix groups", "iwasawa"};
    app.require_subcommand(1);

    FactorizeArgs fa;
    auto* factorize = app.add_subcommand("factorize", "Factor g = k a n relative to the eigenframe of X0");
    factorize->add_option("--input", fa.input, "Matrix JSON for g")->required();
    factorize->add_option("--x0", fa.x0, "Matrix JSON for the Hermitian element X0")->required();
    factorize->add_option("--family", fa.family, "Also check each factor against this family's group");
    factorize->add_option("--out", fa.out, "Write factor JSON here");
    factorize->add_option("--tol", fa.tol, "Relative residual tolerance")->capture_default_str();

    DecomposeArgs da;
    auto* decompose = app.add_subcommand("decompose", "Split X into k + a + n relative to the eigenframe of X0");
    decompose->add_option("--input", da.input, "Matrix JSON for X")->required();
    decompose->add_option("--x0", da.x0, "Matrix JSON for the Hermitian element X0")->required();
    decompose->add_option("--out", da.out, "Write the three parts as JSON here");

    HilbertArgs ha;
    auto* hilbert = app.add_subcommand("demo-hilbert", "Triangular truncation of the skew Hilbert matrix");
    hilbert->add_option("--sizes", ha.sizes, "Comma-separated sizes")->capture_default_str();
    hilbert->add_option("--out", ha.out, "Write the growth table as CSV here");

    VerifyArgs va;
    auto* verify = app.add_subcommand("verify", "Sample a family's group and check closure of the factors");
    verify->add_option("--family", va.family, "Family tag (a, ai, aii, aiii, b, bi, bii, c, ci, cii)")->required();
    verify->add_option("--dim", va.dim, "Matrix dimension")->required();
    verify->add_option("--trials", va.trials, "Number of sampled group elements")->capture_default_str();
    verify->add_option("--seed", va.seed, "Base seed")->capture_default_str();

    BasisArgs ba;
    auto* basis = app.add_subcommand("basis", "Emit the structure operators and adapted basis of a family");
    basis->add_option("--family", ba.family, "Family tag")->required();
    basis->add_option("--dim", ba.dim, "Matrix dimension")->required();
    basis->add_option("--out", ba.out, "Write JSON here");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n\n";
        const auto parsed = app.get_subcommands();
        err << (parsed.empty() ? app.help() : parsed.front()->help());
        return kExitUsage;
    }

    try {
        if (factorize->parsed()) return cmd_factorize(fa, out, err);
        if (decompose->parsed()) return cmd_decompose(da, out, err);
        if (hilbert->parsed()) return cmd_demo_hilbert(ha, out, err);
        if (verify->parsed()) return cmd_verify(va, out);
        if (basis->parsed()) return cmd_basis(ba, out, err);
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return numeric_kind(e.kind()) ? kExitNumeric : kExitUsage;
    } catch (const std::logic_error& e) {
        err << "internal error: " << e.what() << '\n';
        return kExitNumeric;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    err << app.help();
    return kExitUsage;
}

}  // namespace iwasawa

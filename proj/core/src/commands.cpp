#include "riccati/commands.hpp"

#include <json.hpp>

#include <cstdlib>
#include <ostream>
#include <sstream>

#include "riccati/pencil.hpp"
#include "riccati/reduction.hpp"
#include "riccati/triple_io.hpp"

namespace riccati {

namespace {

using nlohmann::json;

std::string scalar(double v) {
    std::ostringstream os;
    os << v;
    return os.str();
}

const Eigen::IOFormat kRowFormat(Eigen::StreamPrecision, Eigen::DontAlignCols,
                                 ", ", "\n", "  [", "]");

void print_matrix(std::ostream& out, const Matrix& m) {
    if (m.size() == 0) {
        out << "  []\n";
        return;
    }
    out << m.format(kRowFormat) << '\n';
}

json matrix_json(const Matrix& m) { return json::parse(matrix_to_json(m)); }

std::string describe_terminal(const TerminalEquation& term) {
    if (std::holds_alternative<EmptyEquation>(term)) return "Empty";
    if (const auto* stein = std::get_if<SteinEquation>(&term)) {
        if (stein->A0.rows() == 1)
            return "Stein(A0=" + scalar(stein->A0(0, 0)) +
                   ", Q0=" + scalar(stein->Q0(0, 0)) + ")";
        return "Stein(order=" + std::to_string(stein->A0.rows()) + ")";
    }
    const auto& dare = std::get<RegularDare>(term);
    return "RegularDARE(order=" + std::to_string(dare.triple.n()) + ")";
}

json terminal_json(const TerminalEquation& term) {
    json t;
    if (std::holds_alternative<EmptyEquation>(term)) {
        t["kind"] = "Empty";
    } else if (const auto* stein = std::get_if<SteinEquation>(&term)) {
        t["kind"] = "Stein";
        t["A0"] = matrix_json(stein->A0);
        t["Q0"] = matrix_json(stein->Q0);
    } else {
        const auto& dare = std::get<RegularDare>(term);
        t["kind"] = "RegularDARE";
        t["A"] = matrix_json(dare.triple.A);
        t["B"] = matrix_json(dare.triple.B);
        t["Q"] = matrix_json(dare.triple.Q);
        t["R"] = matrix_json(dare.triple.R);
        t["S"] = matrix_json(dare.triple.S);
    }
    return t;
}

void print_chain(std::ostream& out, const ReductionChain& chain, bool trace,
                 bool machine) {
    if (machine) {
        json doc;
        doc["order"] = chain.original.n();
        doc["steps"] = json::array();
        for (const ReductionStep& step : chain.steps) {
            json s;
            s["kind"] = to_string(step.kind);
            s["reduced_order"] = step.reduced_order;
            s["state_transform"] = matrix_json(step.state_transform);
            s["input_transform"] = matrix_json(step.input_transform);
            s["q_offset"] = matrix_json(step.q_offset);
            doc["steps"].push_back(std::move(s));
        }
        doc["terminal"] = terminal_json(chain.terminal);
        out << doc.dump(2) << '\n';
        return;
    }
    Index order = chain.original.n();
    int count = 0;
    for (const ReductionStep& step : chain.steps) {
        out << "step " << ++count << ": " << to_string(step.kind);
        if (step.kind == StepKind::KernelA0)
            out << " (nu=" << order - step.reduced_order << ", order " << order
                << " -> " << step.reduced_order << ")";
        else if (step.kind == StepKind::KernelR)
            out << " (eta=" << order - step.reduced_order << ", order " << order
                << " -> " << step.reduced_order << ")";
        else
            out << " (order " << order << ")";
        out << '\n';
        if (trace && step.kind != StepKind::CrossElim) {
            out << " state transform:\n";
            print_matrix(out, step.state_transform);
            if (step.kind == StepKind::InputSplit) {
                out << " input transform:\n";
                print_matrix(out, step.input_transform);
            }
        }
        order = step.reduced_order;
    }
    out << "terminal: " << describe_terminal(chain.terminal) << '\n';
}

int cmd_diagnose(const CommandOptions& opt, const PopovTriple& sigma,
                 const Tolerance& tol, std::ostream& out) {
    const Diagnosis diag = diagnose(sigma, tol, std::nullopt, opt.seed);
    if (opt.format == "machine") {
        json doc;
        doc["pencil_regular"] = diag.pencil_regular;
        doc["N_singular"] = diag.N_singular;
        doc["R_singular"] = diag.R_singular;
        doc["A0_singular"] = diag.A0_singular;
        doc["rank_R"] = diag.rank_R;
        out << doc.dump(2) << '\n';
    } else {
        out << "pencil regular: " << (diag.pencil_regular ? "yes" : "no") << '\n'
            << "N singular: " << (diag.N_singular ? "yes" : "no") << '\n'
            << "R singular: " << (diag.R_singular ? "yes" : "no")
            << " (rank " << diag.rank_R << " of " << sigma.m() << ")\n"
            << "A0 singular: " << (diag.A0_singular ? "yes" : "no") << '\n';
    }
    return ExitOk;
}

int cmd_reduce(const CommandOptions& opt, const PopovTriple& sigma,
               const Tolerance& tol, std::ostream& out) {
    print_chain(out, reduce(sigma, tol), opt.trace, opt.format == "machine");
    return ExitOk;
}

int cmd_solve(const CommandOptions& opt, const PopovTriple& sigma,
              const Tolerance& tol, std::ostream& out, std::ostream& err) {
    const ReductionChain chain = reduce(sigma, tol);
    const SolutionSet terminal = solve_terminal(chain.terminal, tol);
    if (terminal.empty()) {
        err << "no solution: terminal equation is inconsistent or has no real "
               "solution\n";
        return ExitNoSolution;
    }
    const SolutionSet lifted = lift(chain, terminal, tol);

    if (opt.format == "machine") {
        json doc;
        doc["families"] = json::array();
        for (const SolutionFamily& family : lifted.families) {
            json f;
            f["base"] = matrix_json(family.base);
            f["basis"] = json::array();
            for (const Matrix& h : family.basis) f["basis"].push_back(matrix_json(h));
            f["residual"] = gdare_residual(sigma, family.base, tol).norm;
            doc["families"].push_back(std::move(f));
        }
        out << doc.dump(2) << '\n';
        return ExitOk;
    }

    out << "families: " << lifted.families.size() << '\n';
    int count = 0;
    for (const SolutionFamily& family : lifted.families) {
        out << "family " << ++count << " (dim " << family.dim() << ")\n base:\n";
        print_matrix(out, family.base);
        for (Index i = 0; i < family.dim(); ++i) {
            out << " basis[" << i << "]:\n";
            print_matrix(out, family.basis[static_cast<std::size_t>(i)]);
        }
        out << " residual(base) = " << gdare_residual(sigma, family.base, tol).norm
            << '\n';
    }
    return ExitOk;
}

int cmd_verify(const CommandOptions& opt, const PopovTriple& sigma,
               const Tolerance& tol, std::ostream& out, std::ostream& err) {
    if (opt.x_path.empty()) {
        err << "verify requires --x <matrix-file>\n";
        return ExitValidation;
    }
    Matrix x = load_matrix(opt.x_path);
    if (x.rows() != sigma.n() || x.cols() != sigma.n()) {
        err << "X must be " << sigma.n() << " x " << sigma.n() << '\n';
        return ExitValidation;
    }
    if (max_norm(x - x.transpose()) > tol.abs_residual) {
        err << "X is not symmetric\n";
        return ExitValidation;
    }
    const Residual res = gdare_residual(sigma, x, tol);
    const bool ok = res.accepted(tol.abs_residual);
    if (opt.format == "machine") {
        json doc;
        doc["residual"] = res.norm;
        doc["kernel_ok"] = res.kernel_ok;
        doc["accepted"] = ok;
        out << doc.dump(2) << '\n';
    } else {
        out << "residual = " << res.norm << '\n'
            << "kernel condition: " << (res.kernel_ok ? "ok" : "violated") << '\n'
            << "verdict: " << (ok ? "accepted" : "rejected") << '\n';
    }
    return ok ? ExitOk : ExitRejected;
}

}  // namespace

std::uint64_t seed_from_environment() {
    const char* env = std::getenv("RICCATI_SEED");
    if (!env) return 0;
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end == env) return 0;
    return static_cast<std::uint64_t>(v);
}

int run_command(const CommandOptions& opt, std::ostream& out, std::ostream& err) {
    Tolerance tol;
    if (opt.tol) tol.abs_residual = *opt.tol;
    try {
        const TripleDocument doc = load_triple(opt.triple_path, tol);
        const Tolerance eff = doc.tol.value_or(tol);
        if (opt.command == "diagnose")
            return cmd_diagnose(opt, doc.triple, eff, out);
        if (opt.command == "reduce") return cmd_reduce(opt, doc.triple, eff, out);
        if (opt.command == "solve")
            return cmd_solve(opt, doc.triple, eff, out, err);
        if (opt.command == "verify")
            return cmd_verify(opt, doc.triple, eff, out, err);
        err << "unknown command '" << opt.command << "'\n";
        return ExitValidation;
    } catch (const IoError& e) {
        err << "error: " << e.what() << '\n';
        return ExitIo;
    } catch (const ParseError& e) {
        err << "error: " << e.what() << '\n';
        return ExitValidation;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return ExitValidation;
    } catch (const LiftError& e) {
        err << "internal error: " << e.what() << '\n';
        return ExitNoSolution;
    }
}

}  // namespace riccati

#include "geolog/io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>

namespace geolog {

std::string format_double(double value) {
    char buffer[64];
    std::snprintf(buffer, sizeof(buffer), "%.17g", value);
    return buffer;
}

std::string format_vector(const Vector& v) {
    std::string out;
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        if (i > 0) out += ',';
        out += format_double(v[i]);
    }
    return out;
}

Vector parse_vector(const std::string& text) {
    std::vector<double> values;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t comma = text.find(',', pos);
        const std::string token =
            text.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
        if (token.empty()) throw ParseError("empty numeric field");
        char* end = nullptr;
        const double value = std::strtod(token.c_str(), &end);
        if (end == token.c_str() || *end != '\0') {
            throw ParseError("cannot parse number '" + token + "'");
        }
        values.push_back(value);
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    Vector out(static_cast<Eigen::Index>(values.size()));
    for (std::size_t i = 0; i < values.size(); ++i) out[static_cast<Eigen::Index>(i)] = values[i];
    return out;
}

namespace {

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r\n");
    if (begin == std::string::npos) return {};
    const auto end = s.find_last_not_of(" \t\r\n");
    return s.substr(begin, end - begin + 1);
}

/// Parses "key=value" tokens from "#space=spd dim=3 n=10".
std::map<std::string, std::string> parse_header(const std::string& line) {
    std::map<std::string, std::string> fields;
    std::istringstream stream(line.substr(1));  // skip '#'
    std::string token;
    while (stream >> token) {
        const auto eq = token.find('=');
        if (eq == std::string::npos) throw ParseError("malformed header token '" + token + "'");
        fields[token.substr(0, eq)] = token.substr(eq + 1);
    }
    return fields;
}

int parse_int(const std::string& text, const std::string& what) {
    char* end = nullptr;
    const long value = std::strtol(text.c_str(), &end, 10);
    if (end == text.c_str() || *end != '\0') {
        throw ParseError("cannot parse " + what + " '" + text + "'");
    }
    return static_cast<int>(value);
}

}  // namespace

bool MatrixBundle::fully_labeled() const {
    for (const BundleRow& row : rows) {
        if (row.label == kUnlabeled) return false;
    }
    return true;
}

Dataset MatrixBundle::to_dataset() const {
    std::vector<Point> points;
    std::vector<int> labels;
    points.reserve(rows.size());
    labels.reserve(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].label == kUnlabeled) {
            std::ostringstream msg;
            msg << "row " << (i + 1) << " is unlabeled ('?'); labels are required here";
            throw ParseError(msg.str());
        }
        points.push_back(Point{space->id(), rows[i].coords});
        labels.push_back(rows[i].label);
    }
    return make_dataset(*space, std::move(points), std::move(labels));
}

MatrixBundle read_bundle(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw ParseError("empty bundle: missing header line");
    line = trim(line);
    if (line.empty() || line[0] != '#') {
        throw ParseError("bundle header must start with '#space=...'");
    }
    const auto fields = parse_header(line);
    for (const char* key : {"space", "dim", "n"}) {
        if (!fields.count(key)) {
            throw ParseError(std::string("bundle header missing '") + key + "'");
        }
    }

    MatrixBundle bundle;
    bundle.space_name = fields.at("space");
    bundle.dim = parse_int(fields.at("dim"), "dim");
    const int declared_rows = parse_int(fields.at("n"), "n");
    try {
        bundle.space = make_space(bundle.space_name, bundle.dim);
    } catch (const std::invalid_argument& e) {
        throw ParseError(e.what());
    }

    int line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        line = trim(line);
        if (line.empty()) continue;
        const auto comma = line.find(',');
        if (comma == std::string::npos) {
            std::ostringstream msg;
            msg << "line " << line_no << ": expected 'label,coords...'";
            throw ParseError(msg.str());
        }
        const std::string label_token = trim(line.substr(0, comma));
        BundleRow row;
        if (label_token == "?") row.label = kUnlabeled;
        else if (label_token == "0") row.label = 0;
        else if (label_token == "1") row.label = 1;
        else {
            std::ostringstream msg;
            msg << "line " << line_no << ": label must be 0, 1 or ?, got '" << label_token << "'";
            throw ParseError(msg.str());
        }
        try {
            row.coords = parse_vector(line.substr(comma + 1));
        } catch (const ParseError& e) {
            std::ostringstream msg;
            msg << "line " << line_no << ": " << e.what();
            throw ParseError(msg.str());
        }
        if (row.coords.size() != bundle.space->ambient_size()) {
            std::ostringstream msg;
            msg << "line " << line_no << ": expected " << bundle.space->ambient_size()
                << " coordinates, got " << row.coords.size();
            throw ParseError(msg.str());
        }
        if (std::string why = bundle.space->membership_violation(row.coords); !why.empty()) {
            std::ostringstream msg;
            msg << "line " << line_no << ": " << why;
            throw ParseError(msg.str());
        }
        bundle.rows.push_back(std::move(row));
    }
    if (static_cast<int>(bundle.rows.size()) != declared_rows) {
        std::ostringstream msg;
        msg << "header declares n=" << declared_rows << " rows but file has "
            << bundle.rows.size();
        throw ParseError(msg.str());
    }
    return bundle;
}

MatrixBundle read_bundle_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path + "'");
    return read_bundle(in);
}

void write_bundle(std::ostream& out, const MatrixBundle& bundle) {
    out << "#space=" << bundle.space_name << " dim=" << bundle.dim << " n=" << bundle.rows.size()
        << "\n";
    for (const BundleRow& row : bundle.rows) {
        if (row.label == kUnlabeled) out << '?';
        else out << row.label;
        out << ',' << format_vector(row.coords) << "\n";
    }
}

void write_bundle_file(const std::string& path, const MatrixBundle& bundle) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot open '" + path + "' for writing");
    write_bundle(out, bundle);
}

ModelFile to_model_file(const std::string& space_name, int dim, const FitResult& fitted) {
    ModelFile model;
    model.space_name = space_name;
    model.dim = dim;
    model.mu = fitted.mu_hat.coords;
    model.beta = fitted.beta_hat.coords;
    model.b = fitted.b_hat.coeffs;
    model.loglik = fitted.loglik;
    model.grad_norm = fitted.grad_norm;
    model.converged = fitted.converged;
    model.separated = fitted.separated;
    return model;
}

std::pair<SpacePtr, FitResult> from_model_file(const ModelFile& model) {
    SpacePtr space;
    try {
        space = make_space(model.space_name, model.dim);
    } catch (const std::invalid_argument& e) {
        throw ParseError(e.what());
    }
    FitResult fitted;
    fitted.mu_hat = space->make_point(model.mu);
    fitted.beta_hat = space->make_point(model.beta);
    if (model.b.size() != space->dim()) {
        throw ParseError("model b_hat has wrong length");
    }
    fitted.b_hat = TangentVector{fitted.mu_hat, model.b};
    const Point rebuilt = space->exp_map(fitted.b_hat);
    if ((rebuilt.coords - fitted.beta_hat.coords).norm() > 1e-8) {
        throw ParseError("model file is inconsistent: beta_hat differs from exp_mu(b_hat)");
    }
    fitted.loglik = model.loglik;
    fitted.grad_norm = model.grad_norm;
    fitted.converged = model.converged;
    fitted.separated = model.separated;
    return {std::move(space), std::move(fitted)};
}

ModelFile read_model(std::istream& in) {
    std::map<std::string, std::string> fields;
    std::string line;
    while (std::getline(in, line)) {
        line = trim(line);
        if (line.empty() || line[0] == '#') continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw ParseError("malformed model line '" + line + "'");
        fields[line.substr(0, eq)] = line.substr(eq + 1);
    }
    for (const char* key : {"space", "dim", "mu_hat", "beta_hat", "b_hat", "loglik", "grad_norm",
                            "converged", "separated", "version"}) {
        if (!fields.count(key)) {
            throw ParseError(std::string("model file missing '") + key + "'");
        }
    }
    ModelFile model;
    model.space_name = fields.at("space");
    model.dim = parse_int(fields.at("dim"), "dim");
    model.mu = parse_vector(fields.at("mu_hat"));
    model.beta = parse_vector(fields.at("beta_hat"));
    model.b = parse_vector(fields.at("b_hat"));
    model.loglik = std::strtod(fields.at("loglik").c_str(), nullptr);
    model.grad_norm = std::strtod(fields.at("grad_norm").c_str(), nullptr);
    model.converged = fields.at("converged") == "1";
    model.separated = fields.at("separated") == "1";
    model.version = fields.at("version");
    return model;
}

ModelFile read_model_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path + "'");
    return read_model(in);
}

void write_model(std::ostream& out, const ModelFile& model) {
    out << "space=" << model.space_name << "\n";
    out << "dim=" << model.dim << "\n";
    out << "mu_hat=" << format_vector(model.mu) << "\n";
    out << "beta_hat=" << format_vector(model.beta) << "\n";
    out << "b_hat=" << format_vector(model.b) << "\n";
    out << "loglik=" << format_double(model.loglik) << "\n";
    out << "grad_norm=" << format_double(model.grad_norm) << "\n";
    out << "converged=" << (model.converged ? 1 : 0) << "\n";
    out << "separated=" << (model.separated ? 1 : 0) << "\n";
    out << "version=" << model.version << "\n";
}

void write_model_file(const std::string& path, const ModelFile& model) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot open '" + path + "' for writing");
    write_model(out, model);
}

}  // namespace geolog

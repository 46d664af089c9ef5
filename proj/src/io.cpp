#include "finmod/io.hpp"

#include <fstream>
#include <sstream>

#include "finmod/parser.hpp"

namespace finmod {

namespace {

std::string strip(const std::string& line) {
    auto hash = line.find('#');
    std::string s = hash == std::string::npos ? line : line.substr(0, hash);
    auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

// lines with comments and blanks removed
std::vector<std::string> clean_lines(std::istream& in) {
    std::vector<std::string> out;
    std::string line;
    while (std::getline(in, line)) {
        auto s = strip(line);
        if (!s.empty()) out.push_back(s);
    }
    return out;
}

std::vector<std::string> words(const std::string& line) {
    std::istringstream ss(line);
    std::vector<std::string> out;
    std::string w;
    while (ss >> w) out.push_back(w);
    return out;
}

std::ifstream open_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path.string());
    return in;
}

Vocabulary vocab_from_ref(const std::string& ref, const std::filesystem::path& base_dir) {
    if (is_builtin_vocab(ref)) return builtin_vocab(ref);
    std::filesystem::path p(ref);
    if (p.is_relative()) p = base_dir / p;
    return load_vocabulary(p);
}

Tuple parse_tuple(const std::string& token, int arity) {
    if (token.size() < 2 || token.front() != '(' || token.back() != ')')
        throw IoError("malformed tuple " + token);
    Tuple t;
    std::string inner = token.substr(1, token.size() - 2);
    std::istringstream ss(inner);
    std::string part;
    while (std::getline(ss, part, ',')) t.push_back(std::stoi(part));
    if (static_cast<int>(t.size()) != arity) throw IoError("tuple arity mismatch in " + token);
    return t;
}

std::string tuple_text(const Tuple& t) {
    std::string out = "(";
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (i) out += ",";
        out += std::to_string(t[i]);
    }
    return out + ")";
}

NamedStructure parse_structure_block(const std::vector<std::string>& lines, std::size_t& i,
                                     const std::filesystem::path& base_dir) {
    auto head = words(lines.at(i));
    if (head.size() != 2 || head[0] != "structure") throw IoError("expected 'structure <name>'");
    std::string name = head[1];
    ++i;
    auto vline = words(lines.at(i));
    if (vline.size() != 2 || vline[0] != "vocab") throw IoError("expected 'vocab <ref>'");
    Vocabulary vocab = vocab_from_ref(vline[1], base_dir);
    ++i;
    auto uline = words(lines.at(i));
    if (uline.size() != 2 || uline[0] != "universe") throw IoError("expected 'universe <n>'");
    FinStructure s(vocab, std::stoi(uline[1]));
    ++i;
    for (; i < lines.size(); ++i) {
        if (lines[i] == "end") {
            ++i;
            return {name, std::move(s)};
        }
        auto colon = lines[i].find(':');
        auto ws = words(lines[i].substr(0, colon));
        if (colon == std::string::npos || ws.size() != 2 || ws[0] != "rel")
            throw IoError("expected 'rel <Name>: tuples' or 'end'");
        const std::string& rel = ws[1];
        for (const auto& tok : words(lines[i].substr(colon + 1)))
            s.add_tuple(rel, parse_tuple(tok, vocab.arity(rel)));
    }
    throw IoError("missing 'end'");
}

}  // namespace

bool is_builtin_vocab(const std::string& name) {
    return name == "tauE" || name == "tau_E" || name == "tau0" || name == "tau_0";
}

Vocabulary builtin_vocab(const std::string& name) {
    if (name == "tauE" || name == "tau_E") return tau_E();
    if (name == "tau0" || name == "tau_0") return tau_0();
    throw IoError("unknown builtin vocabulary " + name);
}

Vocabulary read_vocabulary(std::istream& in) {
    std::vector<RelSymbol> symbols;
    std::map<std::string, std::string> pairs;
    for (const auto& line : clean_lines(in)) {
        auto ws = words(line);
        if (ws[0] == "rel" && ws.size() == 2) {
            auto slash = ws[1].rfind('/');
            if (slash == std::string::npos) throw IoError("expected rel <Name>/<arity>");
            symbols.push_back({ws[1].substr(0, slash), std::stoi(ws[1].substr(slash + 1))});
        } else if (ws[0] == "pair" && ws.size() == 3) {
            pairs[ws[1]] = ws[2];
        } else {
            throw IoError("unrecognized vocabulary line: " + line);
        }
    }
    return Vocabulary(std::move(symbols), std::move(pairs));
}

Vocabulary load_vocabulary(const std::filesystem::path& path) {
    auto in = open_file(path);
    return read_vocabulary(in);
}

void write_vocabulary(std::ostream& out, const Vocabulary& vocab) {
    for (const auto& s : vocab.symbols()) out << "rel " << s.name << "/" << s.arity << "\n";
    for (const auto& [std_sym, comp_sym] : vocab.pairs())
        out << "pair " << std_sym << " " << comp_sym << "\n";
}

NamedStructure read_structure(std::istream& in, const std::filesystem::path& base_dir) {
    auto lines = clean_lines(in);
    std::size_t i = 0;
    return parse_structure_block(lines, i, base_dir);
}

NamedStructure load_structure(const std::filesystem::path& path) {
    auto in = open_file(path);
    return read_structure(in, path.parent_path());
}

void write_structure(std::ostream& out, const std::string& name, const FinStructure& s,
                     const std::string& vocab_ref) {
    out << "structure " << name << "\n";
    out << "vocab " << vocab_ref << "\n";
    out << "universe " << s.size() << "\n";
    for (const auto& sym : s.vocab().symbols()) {
        const auto& rel = s.relation(sym.name);
        if (rel.empty()) continue;
        out << "rel " << sym.name << ":";
        for (const auto& t : rel) out << " " << tuple_text(t);
        out << "\n";
    }
    out << "end\n";
}

void save_structure(const std::filesystem::path& path, const std::string& name,
                    const FinStructure& s) {
    std::string ref;
    if (s.vocab() == tau_E()) {
        ref = "tauE";
    } else if (s.vocab() == tau_0()) {
        ref = "tau0";
    } else {
        std::filesystem::path vpath = path;
        vpath += ".fv";
        std::ofstream vout(vpath);
        if (!vout) throw IoError("cannot write " + vpath.string());
        write_vocabulary(vout, s.vocab());
        ref = vpath.filename().string();
    }
    std::ofstream out(path);
    if (!out) throw IoError("cannot write " + path.string());
    write_structure(out, name, s, ref);
}

void write_roles(std::ostream& out, const GadgetGraph& gg) {
    for (int v = 1; v <= gg.graph.size(); ++v) {
        const RoleInfo& r = gg.roles[v - 1];
        out << "roles: " << v << " ";
        switch (r.role) {
            case VertexRole::Basic: out << "basic"; break;
            case VertexRole::Companion: out << "companion"; break;
            case VertexRole::CycleMember: out << "cycle(" << r.tag << "," << tuple_text(r.fact) << ")"; break;
            case VertexRole::PathMember: out << "path(" << r.tag << "," << tuple_text(r.fact) << ")"; break;
            case VertexRole::EarMember: out << "ear(" << r.tag << "," << tuple_text(r.fact) << ")"; break;
        }
        out << "\n";
    }
}

ForbiddenSet read_forbidden(std::istream& in, const std::filesystem::path& base_dir) {
    auto lines = clean_lines(in);
    if (lines.empty()) throw IoError("empty forbidden set file");
    auto head = words(lines[0]);
    if (head.size() != 2 || head[0] != "forbidden" || head[1].rfind("k=", 0) != 0)
        throw IoError("expected 'forbidden k=<k>' header");
    ForbiddenSet f;
    f.bound = std::stoi(head[1].substr(2));
    std::size_t i = 1;
    while (i < lines.size()) {
        auto named = parse_structure_block(lines, i, base_dir);
        if (f.members.empty()) f.vocab = named.structure.vocab();
        f.members.push_back(std::move(named.structure));
    }
    if (f.members.empty()) throw IoError("forbidden set file must embed its vocabulary via members");
    f.validate();
    return f;
}

ForbiddenSet load_forbidden(const std::filesystem::path& path) {
    auto in = open_file(path);
    return read_forbidden(in, path.parent_path());
}

void save_forbidden(const std::filesystem::path& path, const ForbiddenSet& f) {
    std::string ref;
    if (f.vocab == tau_E()) {
        ref = "tauE";
    } else if (f.vocab == tau_0()) {
        ref = "tau0";
    } else {
        std::filesystem::path vpath = path;
        vpath += ".fv";
        std::ofstream vout(vpath);
        if (!vout) throw IoError("cannot write " + vpath.string());
        write_vocabulary(vout, f.vocab);
        ref = vpath.filename().string();
    }
    std::ofstream out(path);
    if (!out) throw IoError("cannot write " + path.string());
    out << "forbidden k=" << f.bound << "\n";
    for (std::size_t i = 0; i < f.members.size(); ++i)
        write_structure(out, "F" + std::to_string(i + 1), f.members[i], ref);
}

TuringMachine read_machine(std::istream& in) {
    TuringMachine m;
    bool ended = false;
    for (const auto& line : clean_lines(in)) {
        auto ws = words(line);
        if (ws[0] == "machine" && ws.size() == 2) {
            m.name = ws[1];
        } else if (ws[0] == "states") {
            m.states.assign(ws.begin() + 1, ws.end());
        } else if (ws[0] == "start" && ws.size() == 2) {
            m.start = ws[1];
        } else if (ws[0] == "halt" && ws.size() == 2) {
            m.halt = ws[1];
        } else if (ws[0] == "instr" && ws.size() == 6) {
            Instruction instr;
            instr.from_state = ws[1];
            instr.read = std::stoi(ws[2]);
            instr.to_state = ws[3];
            instr.write = std::stoi(ws[4]);
            if (ws[5] == "L")
                instr.dir = -1;
            else if (ws[5] == "S")
                instr.dir = 0;
            else if (ws[5] == "R")
                instr.dir = 1;
            else
                throw IoError("direction must be L, S or R");
            m.instructions.push_back(instr);
        } else if (ws[0] == "end") {
            ended = true;
            break;
        } else {
            throw IoError("unrecognized machine line: " + line);
        }
    }
    if (!ended) throw IoError("missing 'end'");
    m.validate();
    return m;
}

TuringMachine load_machine(const std::filesystem::path& path) {
    auto in = open_file(path);
    return read_machine(in);
}

void write_machine(std::ostream& out, const TuringMachine& m) {
    out << "machine " << m.name << "\n";
    out << "states";
    for (const auto& q : m.states) out << " " << q;
    out << "\nstart " << m.start << "\nhalt " << m.halt << "\n";
    for (const auto& in : m.instructions)
        out << "instr " << in.from_state << " " << in.read << " " << in.to_state << " " << in.write
            << " " << (in.dir < 0 ? "L" : in.dir == 0 ? "S" : "R") << "\n";
    out << "end\n";
}

Interpretation read_interpretation(std::istream& in, const std::filesystem::path& base_dir) {
    auto lines = clean_lines(in);
    std::size_t i = 0;
    auto head = words(lines.at(i));
    if (head.empty() || head[0] != "interp") throw IoError("expected 'interp <name>'");
    ++i;
    auto vline = words(lines.at(i));
    if (vline.size() != 2 || vline[0] != "vocab") throw IoError("expected 'vocab <ref>'");
    Interpretation interp;
    interp.source = vocab_from_ref(vline[1], base_dir);
    ++i;
    Vocabulary graph_vocab = tau_E();
    for (; i < lines.size(); ++i) {
        if (lines[i] == "end") {
            interp.validate();
            return interp;
        }
        auto colon = lines[i].find(':');
        if (colon == std::string::npos) throw IoError("expected '<section>: <formula>'");
        auto section = words(lines[i].substr(0, colon));
        auto formula = parse_formula(lines[i].substr(colon + 1), graph_vocab);
        if (section.size() == 1 && section[0] == "univ")
            interp.univ = formula;
        else if (section.size() == 2 && section[0] == "def")
            interp.defs[section[1]] = formula;
        else
            throw IoError("unrecognized interpretation section: " + lines[i]);
    }
    throw IoError("missing 'end'");
}

Interpretation load_interpretation(const std::filesystem::path& path) {
    auto in = open_file(path);
    return read_interpretation(in, path.parent_path());
}

void write_interpretation(std::ostream& out, const Interpretation& interp,
                          const std::string& vocab_ref) {
    out << "interp width2\n";
    out << "vocab " << vocab_ref << "\n";
    out << "univ: " << render_formula(*interp.univ) << "\n";
    for (const auto& sym : interp.source.symbols())
        out << "def " << sym.name << ": " << render_formula(*interp.defs.at(sym.name)) << "\n";
    out << "end\n";
}

FormulaPtr load_formula(const std::filesystem::path& path, const Vocabulary& vocab) {
    auto in = open_file(path);
    std::string text, line;
    while (std::getline(in, line)) text += strip(line) + "\n";
    return parse_formula(text, vocab);
}

}  // namespace finmod

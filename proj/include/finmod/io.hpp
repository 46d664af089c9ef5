#ifndef FINMOD_IO_HPP
#define FINMOD_IO_HPP

#include <filesystem>
#include <iosfwd>
#include <string>

#include "finmod/forbidden.hpp"
#include "finmod/gadgets.hpp"
#include "finmod/interp.hpp"
#include "finmod/structure.hpp"
#include "finmod/tm.hpp"

namespace finmod {

/// "tauE"/"tau_E" and "tau0"/"tau_0" resolve without touching the
/// filesystem; anything else is a vocabulary file path.
bool is_builtin_vocab(const std::string& name);
Vocabulary builtin_vocab(const std::string& name);

/// Vocabulary files: lines `rel <Name>/<arity>` and `pair <Std> <Comp>`;
/// blank lines and # comments allowed.
Vocabulary read_vocabulary(std::istream& in);
Vocabulary load_vocabulary(const std::filesystem::path& path);
void write_vocabulary(std::ostream& out, const Vocabulary& vocab);

/// Structure files:
///   structure <name>
///   vocab <builtin-or-path>       (path relative to the structure file)
///   universe <n>
///   rel <Name>: (t,...) (t,...)
///   end
struct NamedStructure {
    std::string name;
    FinStructure structure;
};
NamedStructure read_structure(std::istream& in, const std::filesystem::path& base_dir);
NamedStructure load_structure(const std::filesystem::path& path);
void write_structure(std::ostream& out, const std::string& name, const FinStructure& s,
                     const std::string& vocab_ref);
/// Saves the structure; a non-builtin vocabulary is written to
/// `<path>.fv` and referenced by file name.
void save_structure(const std::filesystem::path& path, const std::string& name,
                    const FinStructure& s);

/// Gadget role sidecar: one `roles: <vertex> <role>` line per vertex.
void write_roles(std::ostream& out, const GadgetGraph& gg);

/// Forbidden set files: header `forbidden k=<k>` followed by concatenated
/// structure blocks.
ForbiddenSet read_forbidden(std::istream& in, const std::filesystem::path& base_dir);
ForbiddenSet load_forbidden(const std::filesystem::path& path);
void save_forbidden(const std::filesystem::path& path, const ForbiddenSet& f);

/// Machine files:
///   machine <name>
///   states q0 qh ...
///   start q0
///   halt qh
///   instr <q> <0|1> <p> <0|1> <L|S|R>
///   end
TuringMachine read_machine(std::istream& in);
TuringMachine load_machine(const std::filesystem::path& path);
void write_machine(std::ostream& out, const TuringMachine& m);

/// Interpretation files: named formula sections
///   interp <name>
///   vocab <builtin-or-path>
///   univ: <formula>
///   def <Sym>: <formula>
///   end
Interpretation read_interpretation(std::istream& in, const std::filesystem::path& base_dir);
Interpretation load_interpretation(const std::filesystem::path& path);
void write_interpretation(std::ostream& out, const Interpretation& interp,
                          const std::string& vocab_ref);

/// Formula files: a single formula in the grammar, # comments allowed.
FormulaPtr load_formula(const std::filesystem::path& path, const Vocabulary& vocab);

}  // namespace finmod

#endif

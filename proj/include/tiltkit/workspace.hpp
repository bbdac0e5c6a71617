#pragma once

#include "tiltkit/complex.hpp"

#include <map>

namespace tiltkit {

// Parsed and fully validated input file: one algebra, named modules and
// named complexes over it. Every algebra/module/complex law is checked
// eagerly on load; violations throw with the offending law and location.
struct Workspace {
    FieldSpec field;
    AlgebraPtr algebra;
    std::map<std::string, ModulePtr> modules;
    std::map<std::string, BoundedComplex> complexes;

    const ModulePtr& module_named(const std::string& name) const;
    const BoundedComplex& complex_named(const std::string& name) const;
};

Workspace load_workspace_file(const std::string& path);
Workspace parse_workspace_text(const std::string& json_text);

// Quiver-representation input (per-vertex dimensions + per-arrow matrices)
// converted to action matrices along the algebra's path basis.
ModulePtr module_from_rep(const AlgebraPtr& algebra,
                          const std::map<std::string, std::size_t>& vertex_dims,
                          const std::map<std::string, std::vector<std::vector<mpq_class>>>&
                              arrow_mats);

}  // namespace tiltkit

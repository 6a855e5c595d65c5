#pragma once

// Umbrella header for the theoria library.

#include "theoria/alpha.hpp"
#include "theoria/arrows.hpp"
#include "theoria/ast.hpp"
#include "theoria/corpus.hpp"
#include "theoria/elaborator.hpp"
#include "theoria/error.hpp"
#include "theoria/generators.hpp"
#include "theoria/graph.hpp"
#include "theoria/json_io.hpp"
#include "theoria/lexer.hpp"
#include "theoria/macros.hpp"
#include "theoria/names.hpp"
#include "theoria/parser.hpp"
#include "theoria/printer.hpp"
#include "theoria/renaming.hpp"
#include "theoria/typecheck.hpp"

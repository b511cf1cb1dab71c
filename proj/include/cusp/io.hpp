#ifndef CUSP_IO_HPP
#define CUSP_IO_HPP

#include <string>

#include <json.hpp>

#include "cusp/entourage.hpp"
#include "cusp/hom.hpp"
#include "cusp/lifting.hpp"
#include "cusp/tower.hpp"

namespace cusp {

/// All documents are emitted as ordered JSON with canonical rational
/// strings, so identical inputs give byte-identical outputs.
using Json = nlohmann::ordered_json;

Json encode(const Rat& x);
Json encode(ExtNat x);
Json encode(const Shape& s);
Json encode(const LevelSet& l);
Json encode(const RankFunction& f);
Json encode(const SumElement& v);
Json encode(const Target& t);
Json encode(const EigenFunction& f);
Json encode(const EndpointTuple& t);
Json encode(const StandardFormHom& h);
Json encode(const MorphismTable& t);
Json encode(const Tower& t);
Json encode(const AlphaFamily& a);
Json encode(const IntertwiningCertificate& c);

Rat decode_rat(const Json& j);
ExtNat decode_extnat(const Json& j);
Shape decode_shape(const Json& j);
LevelSet decode_levelset(const Json& j);
RankFunction decode_rankfn(const Json& j);
SumElement decode_sum(const Json& j);
Target decode_target(const Json& j);
EigenFunction decode_eigenfn(const Json& j);
EndpointTuple decode_tuple(const Json& j);
StandardFormHom decode_hom(const Json& j);
MorphismTable decode_table(const Json& j);
Tower decode_tower(const Json& j);
AlphaFamily decode_alpha(const Json& j);
IntertwiningCertificate decode_certificate(const Json& j);

/// Wraps a payload in the self-describing document envelope
/// {"version":"cusp/1","kind":...,"payload":...}.
std::string dump_document(const std::string& kind, const Json& payload);

struct Document {
  std::string kind;
  Json payload;
};

/// Parses and checks the envelope; throws ParseError with context.
Document parse_document(const std::string& text);

}  // namespace cusp

#endif

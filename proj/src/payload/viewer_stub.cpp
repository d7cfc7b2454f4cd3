#include "relicpress/payload.hpp"

namespace relicpress::payload {

namespace {

// Reads the globals d (dictionary), s (sections) and b (base64 raw deflate),
// writes the rendered document into the #o element. Without
// DecompressionStream it shows the sections and a notice.
constexpr std::string_view kStub =
    R"JS((async()=>{e=d[0],m={},r="# APOLLO 11 LUNAR MODULE CODE\n";for(w of d.slice(1).split(" "))m[w[0]]=w.slice(1);for(x of s)r+=`
# --- ${x.replace("\n"," ---\n")}
`;try{t=await new Response((await fetch("data:;base64,"+b)).body.pipeThrough(new DecompressionStream("deflate-raw"))).text();if(t)r+="\n# Decompressed core:\n"+t.replace(/[^ \t\n\r\f\v]+/g,w=>w[1]?w.split(e+e).map(p=>p.split(e).join``).join(e):m[w]||w)}catch{r+="\n# (no decompressor)\n"}o.textContent=r})())JS";

}  // namespace

std::string_view default_viewer_stub() noexcept { return kStub; }

}  // namespace relicpress::payload

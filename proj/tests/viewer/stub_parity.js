// Runs the embedded viewer script under node and compares #o with the host rendering.
const fs = require("fs");
const path = require("path");
const { execFileSync } = require("child_process");

const [gen, manifest, dir] = process.argv.slice(2);
execFileSync(gen, [manifest, dir]);

const run = async (html) => {
  const script = html.slice(html.indexOf("<script>") + 8, html.lastIndexOf("</script>"));
  const o = { textContent: "Loading..." };
  new Function("o", script)(o);
  for (let i = 0; i < 200 && o.textContent === "Loading..."; i++) await new Promise((r) => setTimeout(r, 5));
  return o.textContent;
};

(async () => {
  let failed = 0;
  for (const name of ["hybrid", "token", "escapes"]) {
    const html = fs.readFileSync(path.join(dir, name + ".html"), "utf8");
    const want = fs.readFileSync(path.join(dir, name + ".txt"), "utf8");
    const got = await run(html);
    const ok = got === want;
    if (!ok) {
      failed++;
      let i = 0;
      while (i < got.length && got[i] === want[i]) i++;
      console.log(`FAIL ${name}: first difference at ${i}: ${JSON.stringify(got.slice(i, i + 40))} vs ${JSON.stringify(want.slice(i, i + 40))}`);
    } else {
      console.log(`PASS ${name} (${html.length} bytes)`);
    }
  }
  process.exit(failed ? 1 : 0);
})();

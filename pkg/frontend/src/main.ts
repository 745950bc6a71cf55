import { ApiClient } from "./api.js";
import { App } from "./app.js";

// Boot: a tiny setup form (labels, one per line), then the live session.
function boot(): void {
  const host = document.getElementById("app");
  if (!host) return;
  host.innerHTML = `
    <form class="setup">
      <label>Alternatives (one per line)
        <textarea rows="5">A1\nA2\nA3\nA4</textarea>
      </label>
      <button type="submit">Start session</button>
      <p class="setup-error" hidden></p>
    </form>
    <div class="session"></div>`;
  const form = host.querySelector(".setup") as HTMLFormElement;
  form.addEventListener("submit", async (event) => {
    event.preventDefault();
    const text = (form.querySelector("textarea") as HTMLTextAreaElement).value;
    const labels = text
      .split("\n")
      .map((line) => line.trim())
      .filter(Boolean);
    const error = form.querySelector(".setup-error") as HTMLElement;
    if (labels.length < 2 || new Set(labels).size !== labels.length) {
      error.hidden = false;
      error.textContent = "need at least two distinct labels";
      return;
    }
    const app = new App(host.querySelector(".session") as HTMLElement, {
      api: new ApiClient(""),
      alternatives: labels,
    });
    try {
      await app.start();
      form.hidden = true;
    } catch (err) {
      error.hidden = false;
      error.textContent = err instanceof Error ? err.message : String(err);
    }
  });
}

boot();

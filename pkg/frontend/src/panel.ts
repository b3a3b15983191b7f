/**
 * Switch panel: all 34 switches, grouped as on the original console. Every
 * checkbox reflects the server-announced switchboard; user input sends a
 * command and the control settles only when the server confirms. Latched
 * switches render disabled once the server reports them on.
 */

import { isLatching, type CommandFrame } from "./protocol.js";
import type { UiState } from "./state.js";

export type SendCommand = (frame: CommandFrame) => void;

interface Group {
  title: string;
  match: (name: string) => boolean;
}

const GROUPS: Group[] = [
  { title: "Routes (latching)", match: (n) => n.endsWith("-enable") },
  { title: "Infect (latching)", match: (n) => n.startsWith("infect-") },
  {
    title: "Model",
    match: (n) => ["propagate-infection", "take-precautions", "start-recovery"].includes(n),
  },
  {
    title: "Site lockdown / local mobility",
    match: (n) =>
      n.startsWith("local-mobility-") || (n.startsWith("lockdown-") && n.split("-").length === 2),
  },
  { title: "Route lockdown", match: (n) => n.startsWith("lockdown-") && n.split("-").length === 3 },
];

export class SwitchPanel {
  private inputs = new Map<string, HTMLInputElement>();

  constructor(
    private root: HTMLElement,
    private state: UiState,
    private send: SendCommand,
    private toast: (message: string) => void,
  ) {}

  /** (Re)build the panel from the hello frame's switch inventory. */
  build(): void {
    this.root.textContent = "";
    this.inputs.clear();
    if (!this.state.hello) {
      return;
    }
    const names = Object.keys(this.state.hello.switches);
    for (const group of GROUPS) {
      const members = names.filter(group.match);
      if (members.length === 0) {
        continue;
      }
      const box = document.createElement("fieldset");
      box.className = "switch-group";
      const legend = document.createElement("legend");
      legend.textContent = group.title;
      box.appendChild(legend);
      for (const name of members) {
        box.appendChild(this.makeRow(name));
      }
      this.root.appendChild(box);
    }
    this.refresh();
  }

  private makeRow(name: string): HTMLElement {
    const label = document.createElement("label");
    label.className = "switch-row";
    const input = document.createElement("input");
    input.type = "checkbox";
    input.dataset.switch = name;
    input.addEventListener("change", () => this.onToggle(name, input));
    const text = document.createElement("span");
    text.textContent = name;
    label.appendChild(input);
    label.appendChild(text);
    this.inputs.set(name, input);
    return label;
  }

  private onToggle(name: string, input: HTMLInputElement): void {
    if (!this.state.connected) {
      this.toast("not connected");
      input.checked = this.state.switches[name] ?? false;
      return;
    }
    const seq = this.state.nextSeq++;
    this.state.pending.set(seq, name);
    this.send({
      type: "command",
      kind: "toggle_switch",
      switch: name,
      value: input.checked,
      seq,
    });
  }

  /** Sync every control to the server-announced switchboard. */
  refresh(): void {
    for (const [name, input] of this.inputs) {
      const value = this.state.switches[name] ?? false;
      input.checked = value;
      input.disabled = !this.state.connected || (isLatching(name) && value);
    }
  }

  showError(message: string): void {
    this.toast(message);
    this.refresh(); // reverts any optimistic checkbox position
  }
}

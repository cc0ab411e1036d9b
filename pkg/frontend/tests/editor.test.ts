import { describe, expect, it, vi } from "vitest";

import { draftFrom, renderEditor } from "../src/editor.js";

import { makeModel } from "./helpers.js";

function typedDraft() {
  return {
    id: "logistics",
    name: "Logistics Renamed",
    description: "new description",
    processes: "dispatch\nsorting",
    competency_id: "ops",
    accountability: "Execute",
  };
}

describe("component editor", () => {
  it("renders the draft values", () => {
    const model = makeModel();
    const editor = renderEditor(draftFrom(model.components[2]), model, null);
    expect(editor.querySelector<HTMLInputElement>('input[name="name"]')?.value).toBe("Logistics");
    expect(editor.querySelector<HTMLSelectElement>('select[name="accountability"]')?.value).toBe(
      "Execute",
    );
  });

  it("submits the draft with the last-seen revision", () => {
    const onSave = vi.fn();
    const model = makeModel();
    const editor = renderEditor(typedDraft(), model, null, { onSave });
    editor.querySelector("form")?.dispatchEvent(new Event("submit"));
    expect(onSave).toHaveBeenCalledOnce();
    const [draft, revision] = onSave.mock.calls[0];
    expect(draft.name).toBe("Logistics Renamed");
    expect(revision).toBe(7);
  });

  it("keeps the draft and prompts on a conflict", () => {
    const onReload = vi.fn();
    const conflict = { message: "stale revision 7, store is at revision 9", currentRevision: 9 };
    const editor = renderEditor(typedDraft(), makeModel(), conflict, { onReload });
    const banner = editor.querySelector(".conflict-banner");
    expect(banner?.textContent).toContain("revision 9");
    // nothing the user typed is lost
    expect(editor.querySelector<HTMLInputElement>('input[name="name"]')?.value).toBe(
      "Logistics Renamed",
    );
    editor.querySelector<HTMLButtonElement>(".reload-merge")?.click();
    expect(onReload).toHaveBeenCalled();
  });

  it("reveals the new-type sub-form and passes the custom type on connect", () => {
    const onConnect = vi.fn();
    const editor = renderEditor(typedDraft(), makeModel(), null, { onConnect });
    const typeSelect = editor.querySelector<HTMLSelectElement>('select[name="relation_type"]');
    const newTypeBox = editor.querySelector<HTMLElement>(".new-type");
    expect(newTypeBox?.hidden).toBe(true);
    typeSelect!.value = "__new__";
    typeSelect!.dispatchEvent(new Event("change"));
    expect(newTypeBox?.hidden).toBe(false);

    editor.querySelector<HTMLInputElement>('input[name="new_type_name"]')!.value = "supplies";
    editor.querySelector<HTMLInputElement>('input[name="new_type_directed"]')!.checked = true;
    editor.querySelector<HTMLInputElement>('input[name="new_type_weight"]')!.value = "2";
    editor.querySelector<HTMLButtonElement>("button.connect")?.click();

    expect(onConnect).toHaveBeenCalledOnce();
    const [edge, newType, revision] = onConnect.mock.calls[0];
    expect(edge.relation_type).toBe("supplies");
    expect(newType).toEqual({ name: "supplies", directed: true, default_weight: 2 });
    expect(revision).toBe(7);
  });

  it("deletes through the handler with the revision", () => {
    const onDelete = vi.fn();
    const editor = renderEditor(typedDraft(), makeModel(), null, { onDelete });
    editor.querySelector<HTMLButtonElement>("button.delete")?.click();
    expect(onDelete).toHaveBeenCalledWith("logistics", 7);
  });
});

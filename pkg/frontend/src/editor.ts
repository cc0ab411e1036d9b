/** Component editor: fields, a relation sub-form that can create a new
 * relation type inline, and optimistic-concurrency conflict handling.
 *
 * The editor renders a draft (never the saved state directly); on a 409 the
 * controller re-renders the same draft with the conflict banner, so nothing
 * the user typed is lost.
 */

import type { ComponentDoc, EdgeDoc, ModelDoc, RelationTypeDoc } from "./types.js";

export interface ComponentDraft {
  id: string;
  name: string;
  description: string;
  processes: string;
  competency_id: string;
  accountability: string;
}

export interface EditorConflict {
  message: string;
  currentRevision: number;
}

export interface EditorHandlers {
  onSave?: (draft: ComponentDraft, expectedRevision: number) => void;
  onDelete?: (id: string, expectedRevision: number) => void;
  onConnect?: (
    edge: Partial<EdgeDoc>,
    newType: RelationTypeDoc | null,
    expectedRevision: number,
  ) => void;
  onReload?: () => void;
  onClose?: () => void;
}

export function draftFrom(component: ComponentDoc | null): ComponentDraft {
  return {
    id: component?.id ?? "",
    name: component?.name ?? "",
    description: component?.description ?? "",
    processes: component?.processes.join("\n") ?? "",
    competency_id: component?.competency_id ?? "",
    accountability: component?.accountability ?? "Execute",
  };
}

function field(label: string, input: HTMLElement): HTMLElement {
  const wrap = document.createElement("label");
  wrap.className = "field";
  const caption = document.createElement("span");
  caption.textContent = label;
  wrap.append(caption, input);
  return wrap;
}

function textInput(name: string, value: string): HTMLInputElement {
  const input = document.createElement("input");
  input.name = name;
  input.value = value;
  return input;
}

function selectInput(name: string, options: [string, string][], value: string): HTMLSelectElement {
  const select = document.createElement("select");
  select.name = name;
  for (const [optionValue, label] of options) {
    const option = document.createElement("option");
    option.value = optionValue;
    option.textContent = label;
    if (optionValue === value) option.selected = true;
    select.append(option);
  }
  return select;
}

export function renderEditor(
  draft: ComponentDraft,
  model: ModelDoc,
  conflict: EditorConflict | null,
  handlers: EditorHandlers = {},
  isNew = false,
): HTMLElement {
  const revision = model.meta.revision;
  const root = document.createElement("div");
  root.className = "editor";

  const heading = document.createElement("h3");
  heading.textContent = isNew ? "New component" : `Edit ${draft.id}`;
  root.append(heading);

  if (conflict) {
    const banner = document.createElement("div");
    banner.className = "conflict-banner";
    banner.textContent =
      `${conflict.message} — the model moved to revision ${conflict.currentRevision} ` +
      "while you were editing. Reload to merge; your entries are kept.";
    const reload = document.createElement("button");
    reload.className = "reload-merge";
    reload.textContent = "Reload and merge";
    reload.addEventListener("click", () => handlers.onReload?.());
    banner.append(" ", reload);
    root.append(banner);
  }

  const form = document.createElement("form");
  form.className = "editor-form";
  const idInput = textInput("id", draft.id);
  idInput.disabled = !isNew;
  const nameInput = textInput("name", draft.name);
  const descriptionInput = document.createElement("textarea");
  descriptionInput.name = "description";
  descriptionInput.value = draft.description;
  const processesInput = document.createElement("textarea");
  processesInput.name = "processes";
  processesInput.value = draft.processes;
  const competencySelect = selectInput(
    "competency_id",
    model.competencies.map((c) => [c.id, c.name] as [string, string]),
    draft.competency_id || model.competencies[0]?.id || "",
  );
  const accountabilitySelect = selectInput(
    "accountability",
    [["Direct", "Direct"], ["Control", "Control"], ["Execute", "Execute"]],
    draft.accountability,
  );
  form.append(
    field("id", idInput),
    field("name", nameInput),
    field("description", descriptionInput),
    field("processes (one per line)", processesInput),
    field("competency", competencySelect),
    field("accountability", accountabilitySelect),
  );

  const save = document.createElement("button");
  save.type = "submit";
  save.className = "save";
  save.textContent = `Save (rev ${revision})`;
  form.addEventListener("submit", (event) => {
    event.preventDefault();
    handlers.onSave?.(
      {
        id: idInput.value,
        name: nameInput.value,
        description: descriptionInput.value,
        processes: processesInput.value,
        competency_id: competencySelect.value,
        accountability: accountabilitySelect.value,
      },
      revision,
    );
  });
  form.append(save);
  root.append(form);

  if (!isNew) {
    root.append(renderRelationForm(draft.id, model, handlers, revision));
    const remove = document.createElement("button");
    remove.className = "delete";
    remove.textContent = "Delete component";
    remove.addEventListener("click", () => handlers.onDelete?.(draft.id, revision));
    root.append(remove);
  }

  const close = document.createElement("button");
  close.className = "close";
  close.textContent = "Close";
  close.addEventListener("click", () => handlers.onClose?.());
  root.append(close);
  return root;
}

function renderRelationForm(
  sourceId: string,
  model: ModelDoc,
  handlers: EditorHandlers,
  revision: number,
): HTMLElement {
  const section = document.createElement("fieldset");
  section.className = "relation-form";
  const legend = document.createElement("legend");
  legend.textContent = "Add relation";
  section.append(legend);

  const targets = model.components
    .filter((c) => c.id !== sourceId)
    .map((c) => [c.id, c.name || c.id] as [string, string]);
  const targetSelect = selectInput("target", targets, targets[0]?.[0] ?? "");

  const typeOptions = model.relation_types
    .map((t) => [t.name, t.name] as [string, string])
    .concat([["__new__", "new type…"]]);
  const typeSelect = selectInput("relation_type", typeOptions, typeOptions[0]?.[0] ?? "");

  const newTypeBox = document.createElement("div");
  newTypeBox.className = "new-type";
  newTypeBox.hidden = true;
  const newTypeName = textInput("new_type_name", "");
  const newTypeDirected = document.createElement("input");
  newTypeDirected.type = "checkbox";
  newTypeDirected.name = "new_type_directed";
  const newTypeWeight = textInput("new_type_weight", "1.0");
  newTypeBox.append(
    field("type name", newTypeName),
    field("directed", newTypeDirected),
    field("default weight", newTypeWeight),
  );
  typeSelect.addEventListener("change", () => {
    newTypeBox.hidden = typeSelect.value !== "__new__";
  });

  const weightInput = textInput("weight", "");
  weightInput.placeholder = "default";

  const add = document.createElement("button");
  add.className = "connect";
  add.textContent = "Connect";
  add.addEventListener("click", () => {
    const usingNew = typeSelect.value === "__new__";
    const typeName = usingNew ? newTypeName.value : typeSelect.value;
    handlers.onConnect?.(
      {
        source: sourceId,
        target: targetSelect.value,
        relation_type: typeName,
        weight: weightInput.value ? Number(weightInput.value) : undefined,
      },
      usingNew
        ? {
            name: newTypeName.value,
            directed: newTypeDirected.checked,
            default_weight: Number(newTypeWeight.value) || 1.0,
          }
        : null,
      revision,
    );
  });

  section.append(
    field("target", targetSelect),
    field("relation type", typeSelect),
    newTypeBox,
    field("weight", weightInput),
    add,
  );
  return section;
}

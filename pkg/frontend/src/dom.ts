// Tiny DOM helpers shared by the screens.

export function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  className = "",
  text = "",
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  if (className) node.className = className;
  if (text) node.textContent = text;
  return node;
}

export function option(text: string, value: string): HTMLOptionElement {
  const node = document.createElement("option");
  node.textContent = text;
  node.value = value;
  return node;
}
